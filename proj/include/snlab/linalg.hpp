#pragma once

#include <optional>
#include <vector>

#include "snlab/rational.hpp"

namespace snlab {

// Dense exact linear algebra. Everything here is deterministic: pivot
// choices depend only on the input, never on memory layout or hashing.

QMat q_identity(int n);
QMat q_mul(const QMat& a, const QMat& b);
QVec q_apply(const QMat& a, const QVec& x);
QMat q_transpose(const QMat& a);

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<int> q_rref(QMat& m);

int q_rank(QMat m);

// Canonical kernel basis read off the RREF (one vector per free column,
// with a unit entry in that column).
std::vector<QVec> q_kernel(const QMat& a);

// One solution of a x = b, if any.
std::optional<QVec> q_solve(const QMat& a, const QVec& b);

// Inverse of a square nonsingular matrix; throws Internal when singular.
QMat q_inverse(const QMat& a);

// Left inverse l (n x m) with l a = id for a full-column-rank a (m x n).
QMat q_left_inverse(const QMat& a);

ZVec z_apply(const ZMat& a, const ZVec& x);
ZMat z_mul(const ZMat& a, const ZMat& b);
ZMat z_identity(int n);
QMat q_of_z(const ZMat& a);
QVec q_of_z_vec(const ZVec& x);

// d = u a v with u, v unimodular, d diagonal with d1 | d2 | ... and all
// diagonal entries nonnegative. The inverses are tracked alongside so
// callers can change basis without re-solving.
struct SmithResult {
  ZMat d;
  ZMat u, uinv;
  ZMat v, vinv;
  int rank = 0;  // number of nonzero diagonal entries
};
SmithResult smith_normal_form(const ZMat& a);

// Basis of the saturated integer kernel lattice of a (columns of v past
// the Smith rank).
std::vector<ZVec> z_kernel(const ZMat& a);

}  // namespace snlab
