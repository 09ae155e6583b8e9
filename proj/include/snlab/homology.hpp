#pragma once

#include <vector>

#include "snlab/linalg.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// Chain complex of the gluing: faces -> edges -> vertices.
struct BoundaryMatrices {
  ZMat d1;  // vertices x edges, column = head - tail (zero for self-loops)
  ZMat d2;  // edges x faces, column = abelianized boundary word
};

BoundaryMatrices boundary_matrices(const SurfaceComplex& s);

// First homology with integer coefficients, split into a free part with a
// distinguished cycle basis and the list of invariant factors.
struct HomologyBasis {
  int free_rank = 0;                // rank of the free part
  std::vector<Int> torsion;         // invariant factors > 1, ascending
  std::vector<Chain> basis_cycles;  // free part: one integer cycle per rank
  // Rational functional extracting free-part coordinates: coords(x) =
  // coord_rows * x for every cycle x, and coords(basis_cycles[i]) = e_i.
  QMat coord_rows;
};

// The basis is canonical for a given complex: basis cycles are sign-fixed
// (first nonzero coefficient positive) and ordered by leading edge.
HomologyBasis homology_h1(const SurfaceComplex& s);

bool is_cycle(const SurfaceComplex& s, const Chain& x);

// Coordinates of [x] in the free part of the basis; throws NotACycle.
QVec class_of_cycle(const SurfaceComplex& s, const HomologyBasis& h,
                    const Chain& x);

}  // namespace snlab
