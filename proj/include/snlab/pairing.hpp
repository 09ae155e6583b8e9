#pragma once

#include "snlab/cover.hpp"
#include "snlab/homology.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// Algebraic intersection form on the free part of first homology, in the
// coordinates of a HomologyBasis. Only defined for orientable surfaces;
// the constructor throws NotOrientable otherwise. The matrix is skew
// symmetric, and the sign convention is pinned so the square torus with
// its canonical basis gives [[0, 1], [-1, 0]].
struct IntersectionForm {
  ZMat m;
};

IntersectionForm intersection_form(const SurfaceComplex& s,
                                   const HomologyBasis& h);

// Pairing of two classes given in basis coordinates, by bilinearity.
Rat int_number(const IntersectionForm& f, const QVec& a, const QVec& b);

// Pairing of two cycles given as chains; each must be an exact cycle
// (NotACycle otherwise).
Rat int_number(const SurfaceComplex& s, const HomologyBasis& h,
               const IntersectionForm& f, const Chain& x, const Chain& y);

// True iff both eigenspaces of the deck action pair to zero on themselves
// and each spans half the rank of the cover, the largest an isotropic
// subspace can be.
bool check_lagrangian(const DoubleCover& dc);

}  // namespace snlab
