#pragma once

#include "snlab/homology.hpp"
#include "snlab/polytope.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// Directed elementary circuit: a closed walk that repeats no vertex. Its
// chain has coefficients in {-1,0,1} except for the two-step circuit that
// runs one edge back and forth, whose chain is zero.
struct Circuit {
  std::vector<DirEdge> walk;
  Chain chain;
};

// All directed elementary circuits, each rooted at its smallest vertex
// and listed once per direction. Deterministic order: by root, then by
// depth-first arc order. Throws CircuitBudgetExceeded past the cap.
std::vector<Circuit> elementary_circuits(const SurfaceComplex& s, long cap);

// Unit ball of the stable norm on first homology, in basis coordinates:
// the convex hull of [C]/length(C) over directed elementary circuits C
// with nonzero class. Exact vertices and facets; every facet is
// {h : normal.h <= 1}.
struct NormBall {
  int dim = 0;
  std::vector<QVec> vertices;
  std::vector<QVec> facet_normals;
  std::vector<std::vector<int>> incidence;  // facet -> vertex ids
  // For each vertex, the first enumerated circuit realizing it.
  std::vector<Circuit> vertex_circuit;
};

// Throws DimensionCapExceeded when the rank is past 6; rank zero gives
// the empty ball in dimension zero.
NormBall unit_ball(const SurfaceComplex& s, const HomologyBasis& h, long cap);

// Weighted minimum of a class over real cycles, solved exactly as a
// linear program. The covector certifies the value: it pairs to value
// with cls and its dual norm is at most one.
struct NormResult {
  Rat value;
  Chain minimizer;
  QVec covector;
};

NormResult stable_norm(const SurfaceComplex& s, const HomologyBasis& h,
                       const QVec& cls);

// Conformal decomposition of the optimal cycle into weighted elementary
// circuits: sum of lambda * chain recovers the minimizer and the lengths
// add up to the norm with no cancellation.
std::vector<std::pair<Rat, Circuit>> minimizing_cycles(
    const SurfaceComplex& s, const HomologyBasis& h, const QVec& cls);

// Norm of a class read off the facet description: max over facet normals.
Rat gauge(const NormBall& ball, const QVec& cls);

// Dual norm of a covector: max over ball vertices.
Rat dual_norm(const NormBall& ball, const QVec& covector);

// The face of the unit sphere holding a given class in its relative
// interior: the intersection of every facet tight at the class. The
// covector supports the face, pairing to one exactly on its vertices and
// to less than one on every other vertex.
struct Flat {
  QVec covector;
  std::vector<int> vertex_ids;  // ball vertices on the face
  int dim = 0;                  // affine dimension of the face
};

// Requires gauge(ball, cls) == 1, else NotOnSphere.
Flat flat_of(const NormBall& ball, const QVec& cls);

}  // namespace snlab
