#include "snlab/lp.hpp"

#include "snlab/error.hpp"

namespace snlab {

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense two-phase simplex with Bland's rule, so every pivot choice is the
// smallest admissible index and the run is deterministic and finite. The
// artificial columns stay in the tableau after phase one: reading their
// phase-two reduced costs recovers the duals without tracking an inverse.
class Simplex {
 public:
  Simplex(const QMat& a, const QVec& b, const QVec& c)
      : n_(static_cast<int>(c.size())), m_(static_cast<int>(b.size())), c_(c) {
    t_.assign(m_, QVec(n_ + m_ + 1, Rat(0)));
    basis_.resize(m_);
    live_.assign(m_, true);
    allowed_.assign(n_ + m_, true);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) t_[i][j] = a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][rhs()] = b[i];
      basis_[i] = n_ + i;
    }
  }

  LpStatus run() {
    QVec phase1(n_ + m_, Rat(0));
    for (int i = 0; i < m_; ++i) phase1[n_ + i] = 1;
    load_costs(phase1);
    iterate();  // bounded below by zero, always ends optimal
    if (objective() != 0) return LpStatus::Infeasible;
    expel_artificials();

    QVec phase2(n_ + m_, Rat(0));
    for (int j = 0; j < n_; ++j) phase2[j] = c_[j];
    for (int j = 0; j < n_; ++j) allowed_[j] = true;
    for (int j = n_; j < n_ + m_; ++j) allowed_[j] = false;
    load_costs(phase2);
    return iterate();
  }

  QVec primal() const {
    QVec z(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (live_[i] && basis_[i] < n_) z[basis_[i]] = t_[i][rhs()];
    return z;
  }

  // Phase-two reduced cost of artificial i is -y_i (its true cost is 0).
  QVec duals() const {
    QVec y(m_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (live_[i]) y[i] = -zrow_[n_ + i];
    return y;
  }

 private:
  int rhs() const { return n_ + m_; }

  Rat objective() const {
    Rat v(0);
    for (int i = 0; i < m_; ++i)
      if (live_[i]) v += cost_[basis_[i]] * t_[i][rhs()];
    return v;
  }

  void load_costs(const QVec& cost) {
    cost_ = cost;
    zrow_.assign(n_ + m_, Rat(0));
    for (int j = 0; j < n_ + m_; ++j) {
      zrow_[j] = cost_[j];
      for (int i = 0; i < m_; ++i)
        if (live_[i]) zrow_[j] -= cost_[basis_[i]] * t_[i][j];
    }
  }

  void pivot(int row, int col) {
    Rat p = t_[row][col];
    for (Rat& v : t_[row]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || !live_[i] || t_[i][col] == 0) continue;
      Rat f = t_[i][col];
      for (int j = 0; j <= rhs(); ++j) t_[i][j] -= f * t_[row][j];
    }
    Rat f = zrow_[col];
    if (f != 0)
      for (int j = 0; j < n_ + m_; ++j) zrow_[j] -= f * t_[row][j];
    if (basis_[row] >= n_) allowed_[basis_[row]] = false;
    basis_[row] = col;
  }

  LpStatus iterate() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n_ + m_; ++j)
        if (allowed_[j] && zrow_[j] < 0) { enter = j; break; }
      if (enter < 0) return LpStatus::Optimal;
      int row = -1;
      Rat best(0);
      for (int i = 0; i < m_; ++i) {
        if (!live_[i] || t_[i][enter] <= 0) continue;
        Rat ratio = t_[i][rhs()] / t_[i][enter];
        if (row < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row < 0) return LpStatus::Unbounded;
      pivot(row, enter);
    }
  }

  // Pivot each basic artificial out through any structural column; a row
  // with none left is a redundant constraint and goes dead.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!live_[i] || basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (t_[i][j] != 0) { col = j; break; }
      if (col >= 0)
        pivot(i, col);
      else
        live_[i] = false;
    }
  }

  int n_, m_;
  QVec c_;
  QMat t_;
  std::vector<int> basis_;
  std::vector<bool> live_;
  std::vector<bool> allowed_;
  QVec cost_;
  QVec zrow_;
};

}  // namespace

LpResult solve_standard(const StandardLp& lp) {
  const int m = static_cast<int>(lp.b.size());
  const int n = static_cast<int>(lp.c.size());
  if (static_cast<int>(lp.a.size()) != m)
    fail(Errc::Internal, "lp row count mismatch");
  for (const QVec& row : lp.a)
    if (static_cast<int>(row.size()) != n)
      fail(Errc::Internal, "lp column count mismatch");

  // Normalize to nonnegative right-hand sides, remembering the flips so
  // the duals can be mapped back.
  QMat a = lp.a;
  QVec b = lp.b;
  std::vector<int> rowsign(m, 1);
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0) {
      rowsign[i] = -1;
      b[i] = -b[i];
      for (Rat& v : a[i]) v = -v;
    }
  }

  Simplex sx(a, b, lp.c);
  LpResult out;
  out.status = sx.run();
  if (out.status != LpStatus::Optimal) return out;

  out.z = sx.primal();
  out.value = 0;
  for (int j = 0; j < n; ++j) out.value += lp.c[j] * out.z[j];

  QVec y = sx.duals();
  out.y.assign(m, Rat(0));
  for (int i = 0; i < m; ++i) out.y[i] = Rat(rowsign[i]) * y[i];

  // Certify the answer: primal feasibility, dual feasibility, matching
  // objective values. Any failure is a solver bug, not a bad input.
  for (int i = 0; i < m; ++i) {
    Rat lhs(0);
    for (int j = 0; j < n; ++j) lhs += lp.a[i][j] * out.z[j];
    if (lhs != lp.b[i]) fail(Errc::Internal, "lp primal infeasible at optimum");
  }
  for (int j = 0; j < n; ++j) {
    if (out.z[j] < 0) fail(Errc::Internal, "lp primal negative at optimum");
    Rat red(0);
    for (int i = 0; i < m; ++i) red += lp.a[i][j] * out.y[i];
    if (red > lp.c[j]) fail(Errc::Internal, "lp dual infeasible at optimum");
  }
  Rat dual_value(0);
  for (int i = 0; i < m; ++i) dual_value += lp.b[i] * out.y[i];
  if (dual_value != out.value) fail(Errc::Internal, "lp duality gap at optimum");
  return out;
}

L1Result solve_weighted_l1(const L1Lp& lp) {
  const int m = static_cast<int>(lp.b.size());
  const int n = static_cast<int>(lp.w.size());
  StandardLp split;
  split.b = lp.b;
  split.c.resize(2 * n);
  for (int j = 0; j < n; ++j) split.c[j] = split.c[n + j] = lp.w[j];
  split.a.assign(m, QVec(2 * n, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      split.a[i][j] = lp.a[i][j];
      split.a[i][n + j] = -lp.a[i][j];
    }

  LpResult res = solve_standard(split);
  L1Result out;
  out.status = res.status;
  if (res.status != LpStatus::Optimal) return out;
  out.value = res.value;
  out.y = res.y;
  out.x.resize(n);
  Rat check(0);
  for (int j = 0; j < n; ++j) {
    out.x[j] = res.z[j] - res.z[n + j];
    check += lp.w[j] * rat_abs(out.x[j]);
  }
  if (check != out.value)
    fail(Errc::Internal, "sign-split value differs from weighted l1 norm");
  return out;
}

}  // namespace snlab
