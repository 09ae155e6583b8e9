#pragma once

#include "snlab/homology.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// Orientation double cover of a non-orientable complex, with the deck
// involution and projection as explicit maps, homology of both levels and
// the eigenspace splitting of the deck action.
//
// Base edge l lifts to cover edges "l.0" (id 2l) and "l.1" (id 2l+1), with
// the base weight on each. Base face f lifts to faces 2f and 2f+1, the
// second carrying the reversed and negated word. Both the projection and
// the involution preserve edge directions.
struct DoubleCover {
  SurfaceComplex base;
  SurfaceComplex total;

  std::vector<int> edge_base;      // cover edge -> base edge
  std::vector<int> edge_partner;   // deck swap on cover edges
  std::vector<int> face_base;
  std::vector<int> face_partner;
  std::vector<int> vertex_base;
  std::vector<int> vertex_partner;

  HomologyBasis h_base;
  HomologyBasis h_total;

  QMat i_star;   // deck action on the free part of cover homology
  QMat pi_star;  // projection on homology, base coords x cover coords

  // Canonical bases (reduced echelon kernels) of the +1 and -1 eigenspaces
  // of the deck action, in cover homology coordinates.
  std::vector<QVec> e1_basis;
  std::vector<QVec> em1_basis;
};

// Throws BaseOrientable when the input is orientable (its orientation
// cover would be two disjoint copies).
DoubleCover orientation_cover(const SurfaceComplex& s);

// Chain-level projection and deck images.
Chain project_chain(const DoubleCover& dc, const Chain& cover_chain);
Chain deck_chain(const DoubleCover& dc, const Chain& cover_chain);

// Projection on homology classes: pi_star applied to cover coordinates.
QVec pushforward(const DoubleCover& dc, const QVec& cover_class);

// Full preimage of a closed walk in the base: either one circle of twice
// the length (the walk reverses orientation) or two disjoint circles
// swapped by the deck involution.
struct Lift {
  int components = 0;
  std::vector<Chain> chains;  // one cover chain per component
};

Lift lift_cycle(const DoubleCover& dc, const Chain& gamma);

// A closed curve is one-sided exactly when its preimage is connected.
// Two-lift curves split further by whether the lifts are homologous over
// the rationals: equal classes is type 1, distinct is type 2; one-sided
// curves are type 1 as well.
struct CurveClassification {
  int components = 0;
  bool one_sided = false;
  std::vector<QVec> lift_classes;  // cover homology coordinates
  int type = 0;
};

// Requires gamma simple on the base (NotSimple otherwise).
CurveClassification classify_curve(const DoubleCover& dc, const Chain& gamma);

// Convenience form that builds the cover itself; throws BaseOrientable on
// orientable input like orientation_cover does.
CurveClassification classify_curve(const SurfaceComplex& s,
                                   const Chain& gamma);

}  // namespace snlab
