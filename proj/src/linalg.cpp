#include "snlab/linalg.hpp"

#include <algorithm>

#include "snlab/error.hpp"

namespace snlab {

QMat q_identity(int n) {
  QMat m(n, QVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat q_mul(const QMat& a, const QMat& b) {
  int ar = static_cast<int>(a.size());
  int ac = ar ? static_cast<int>(a[0].size()) : 0;
  int bc = b.empty() ? 0 : static_cast<int>(b[0].size());
  QMat out(ar, QVec(bc, Rat(0)));
  for (int i = 0; i < ar; ++i)
    for (int k = 0; k < ac; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < bc; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

QVec q_apply(const QMat& a, const QVec& x) {
  QVec out(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * x[j];
  return out;
}

QMat q_transpose(const QMat& a) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  QMat out(c, QVec(r, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[j][i] = a[i][j];
  return out;
}

std::vector<int> q_rref(QMat& m) {
  std::vector<int> pivots;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int p = -1;
    for (int i = row; i < rows; ++i)
      if (m[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    Rat inv = Rat(1) / m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (int j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int q_rank(QMat m) { return static_cast<int>(q_rref(m).size()); }

std::vector<QVec> q_kernel(const QMat& a) {
  QMat m = a;
  int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  std::vector<int> pivots = q_rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec x(cols, Rat(0));
    x[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QVec> q_solve(const QMat& a, const QVec& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  QMat m(rows, QVec(cols + 1, Rat(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
    m[i][cols] = b[i];
  }
  // Eliminate with pivots restricted to the coefficient block.
  std::vector<std::pair<int, int>> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int p = -1;
    for (int i = row; i < rows; ++i)
      if (m[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    Rat inv = Rat(1) / m[row][col];
    for (int j = col; j <= cols; ++j) m[row][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (int j = col; j <= cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.emplace_back(row, col);
    ++row;
  }
  for (int i = row; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (auto [r, c] : pivots) x[c] = m[r][cols];
  return x;
}

QMat q_inverse(const QMat& a) {
  int n = static_cast<int>(a.size());
  QMat m(n, QVec(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  std::vector<int> pivots = q_rref(m);
  if (static_cast<int>(pivots.size()) != n || (n && pivots.back() >= n))
    fail(Errc::Internal, "matrix not invertible");
  QMat out(n, QVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

QMat q_left_inverse(const QMat& a) {
  QMat at = q_transpose(a);
  return q_mul(q_inverse(q_mul(at, a)), at);
}

ZVec z_apply(const ZMat& a, const ZVec& x) {
  ZVec out(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

ZMat z_mul(const ZMat& a, const ZMat& b) {
  int ar = static_cast<int>(a.size());
  int ac = ar ? static_cast<int>(a[0].size()) : 0;
  int bc = b.empty() ? 0 : static_cast<int>(b[0].size());
  ZMat out(ar, ZVec(bc, Int(0)));
  for (int i = 0; i < ar; ++i)
    for (int k = 0; k < ac; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < bc; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

ZMat z_identity(int n) {
  ZMat m(n, ZVec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat q_of_z(const ZMat& a) {
  QMat out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (const Int& v : a[i]) out[i].push_back(Rat(v));
  }
  return out;
}

QVec q_of_z_vec(const ZVec& x) {
  QVec out;
  out.reserve(x.size());
  for (const Int& v : x) out.push_back(Rat(v));
  return out;
}

namespace {

// Row and column operations that keep u a v = d in sync, with the inverse
// transforms updated by the inverse operation on the opposite side.
struct SmithWork {
  ZMat d, u, uinv, v, vinv;

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
    for (auto& row : uinv) std::swap(row[i], row[j]);
  }
  // row i += t * row j
  void add_row(int i, int j, const Int& t) {
    for (size_t c = 0; c < d[i].size(); ++c) d[i][c] += t * d[j][c];
    for (size_t c = 0; c < u[i].size(); ++c) u[i][c] += t * u[j][c];
    for (auto& row : uinv) row[j] -= t * row[i];
  }
  void negate_row(int i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (auto& row : uinv) row[i] = -row[i];
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
  }
  // col i += t * col j
  void add_col(int i, int j, const Int& t) {
    for (auto& row : d) row[i] += t * row[j];
    for (auto& row : v) row[i] += t * row[j];
    for (size_t c = 0; c < vinv[i].size(); ++c) vinv[j][c] -= t * vinv[i][c];
  }
};

}  // namespace

SmithResult smith_normal_form(const ZMat& a) {
  int m = static_cast<int>(a.size());
  int n = m ? static_cast<int>(a[0].size()) : 0;
  SmithWork w{a, z_identity(m), z_identity(m), z_identity(n), z_identity(n)};
  if (m == 0 || n == 0)
    return SmithResult{w.d, w.u, w.uinv, w.v, w.vinv, 0};

  int k = 0;
  while (k < m && k < n) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int pi = -1, pj = -1;
    Int best;
    for (int i = k; i < m; ++i)
      for (int j = k; j < n; ++j) {
        if (w.d[i][j] == 0) continue;
        Int mag = abs(w.d[i][j]);
        if (pi < 0 || mag < best) { pi = i; pj = j; best = mag; }
      }
    if (pi < 0) break;
    w.swap_rows(k, pi);
    w.swap_cols(k, pj);

    for (;;) {
      bool restart = false;
      for (int i = k + 1; i < m; ++i) {
        if (w.d[i][k] == 0) continue;
        Int q = w.d[i][k] / w.d[k][k];
        if (q != 0) w.add_row(i, k, -q);
        if (w.d[i][k] != 0) {  // nonzero remainder is a strictly smaller pivot
          w.swap_rows(k, i);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (int j = k + 1; j < n; ++j) {
        if (w.d[k][j] == 0) continue;
        Int q = w.d[k][j] / w.d[k][k];
        if (q != 0) w.add_col(j, k, -q);
        if (w.d[k][j] != 0) {
          w.swap_cols(k, j);
          restart = true;
          break;
        }
      }
      if (restart) continue;

      // Row and column are clear; enforce that the pivot divides the rest
      // of the block, pulling any offender into reach via a row add.
      bool divides = true;
      for (int i = k + 1; i < m && divides; ++i)
        for (int j = k + 1; j < n; ++j) {
          if (w.d[i][j] % w.d[k][k] != 0) {
            w.add_row(k, i, Int(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (w.d[k][k] < 0) w.negate_row(k);
    ++k;
  }
  return SmithResult{w.d, w.u, w.uinv, w.v, w.vinv, k};
}

std::vector<ZVec> z_kernel(const ZMat& a) {
  SmithResult s = smith_normal_form(a);
  int n = a.empty() ? 0 : static_cast<int>(a[0].size());
  std::vector<ZVec> basis;
  for (int j = s.rank; j < n; ++j) {
    ZVec col(n);
    for (int i = 0; i < n; ++i) col[i] = s.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace snlab
