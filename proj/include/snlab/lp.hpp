#pragma once

#include "snlab/rational.hpp"

namespace snlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* lp_status_name(LpStatus status);

// min c.z  subject to  a z = b, z >= 0, solved exactly over the rationals.
struct StandardLp {
  QMat a;
  QVec b;
  QVec c;
};

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Rat value;
  QVec z;  // optimal point (Optimal only)
  QVec y;  // one dual per row: a^T y <= c and b.y = value, both verified
};

LpResult solve_standard(const StandardLp& lp);

// min sum_e w_e |x_e|  subject to  a x = b, x free, weights nonnegative.
// Solved by sign-splitting x; the dual satisfies |a^T y| <= w entrywise
// with b.y equal to the optimal value.
struct L1Lp {
  QMat a;
  QVec b;
  QVec w;
};

struct L1Result {
  LpStatus status = LpStatus::Optimal;
  Rat value;
  QVec x;
  QVec y;
};

L1Result solve_weighted_l1(const L1Lp& lp);

}  // namespace snlab
