#pragma once

#include <string>
#include <utility>
#include <vector>

#include "snlab/ball.hpp"
#include "snlab/homology.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// Reweighting instance: simple, pairwise edge-disjoint cycles together
// with the lengths they should realize. Cycles are chains with
// coefficients in {-1,0,1}.
struct Prescription {
  std::vector<Chain> cycles;
  std::vector<Rat> targets;
};

// Reads `prescribe <target> <tok> <tok> ...` lines, one cycle per line,
// each token a signed edge label like `a` or `-b`. Unknown labels or a
// missing block are syntax errors.
Prescription parse_prescription(const SurfaceComplex& s,
                                const std::string& text);

// Emits the matching `prescribe` lines, tokens in edge id order.
std::string serialize_prescription(const SurfaceComplex& s,
                                   const Prescription& p);

// Instance checks: every cycle simple (NotSimple), supports pairwise
// disjoint (NotDisjoint), classes nonzero and pairwise independent
// (ProportionalClasses), targets positive (NonPositiveWeight).
void validate_prescription(const SurfaceComplex& s, const HomologyBasis& h,
                           const Prescription& p);

// Scales the edges of each cycle so its length matches its target.
SurfaceComplex normalize_lengths(const SurfaceComplex& s,
                                 const Prescription& p);

// One certified combination: the stable norm of sum eps_i * [c_i] equals
// sum |eps_i| * r_i, witnessed by a dual covector from the exact solver.
struct CertificateEntry {
  std::vector<int> eps;
  Rat value;
  QVec covector;
};

struct Certificate {
  SurfaceComplex reweighted;
  int rounds = 0;  // doublings applied to the outside edges
  Rat factor = 1;  // final multiplier on the outside edges
  std::vector<CertificateEntry> entries;
};

// Doubles every weight outside the prescribed cycles until each signed
// combination of their classes is minimized by the cycles themselves.
// Expects the normalized surface. Throws NoSpanProgress when max_rounds
// doublings do not certify.
Certificate penalize_outside(const SurfaceComplex& s, const Prescription& p,
                             int max_rounds);

// Exact comparison of the unit ball sliced to the span of the prescribed
// classes against the symmetrized hull of the points class/target.
bool verify_prescription(const SurfaceComplex& s, const Prescription& p,
                         long circuit_cap);

// Largest size of a system of disjoint simple cycles with pairwise
// independent real classes, by exhaustive search over {-1,0,1} chains.
// Disjoint means edge-disjoint and simultaneously drawable with no
// crossing at shared vertices. Throws SearchBudgetExceeded when the
// surface has more than max_edges edges.
int max_disjoint_systems(const SurfaceComplex& s, int max_edges);

}  // namespace snlab
