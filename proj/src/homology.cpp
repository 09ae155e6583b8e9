#include "snlab/homology.hpp"

#include <algorithm>
#include <numeric>

#include "snlab/error.hpp"

namespace snlab {

BoundaryMatrices boundary_matrices(const SurfaceComplex& s) {
  const int ne = s.edge_count();
  const int nf = s.face_count();
  BoundaryMatrices b;
  b.d1.assign(s.num_vertices, ZVec(ne, Int(0)));
  for (int e = 0; e < ne; ++e) {
    b.d1[s.head[e]][e] += 1;
    b.d1[s.tail[e]][e] -= 1;
  }
  b.d2.assign(ne, ZVec(nf, Int(0)));
  for (int f = 0; f < nf; ++f)
    for (const FaceSide& side : s.faces[f]) b.d2[side.edge][f] += side.sign;
  return b;
}

namespace {

int leading_index(const ZVec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return static_cast<int>(v.size());
}

}  // namespace

HomologyBasis homology_h1(const SurfaceComplex& s) {
  const int ne = s.edge_count();
  const int nf = s.face_count();
  BoundaryMatrices b = boundary_matrices(s);

  // Saturated basis of the cycle lattice ker d1.
  std::vector<ZVec> kernel = z_kernel(b.d1);
  const int k = static_cast<int>(kernel.size());
  ZMat kmat(ne, ZVec(k, Int(0)));  // columns are the kernel basis
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < ne; ++i) kmat[i][j] = kernel[j][i];

  // Express each face boundary in cycle coordinates: kmat * a = d2. The
  // solution is integral because the kernel basis is saturated.
  ZMat a(k, ZVec(nf, Int(0)));
  {
    QMat kq = q_of_z(kmat);
    for (int f = 0; f < nf; ++f) {
      QVec rhs(ne);
      for (int e = 0; e < ne; ++e) rhs[e] = Rat(b.d2[e][f]);
      auto sol = q_solve(kq, rhs);
      if (!sol) fail(Errc::Internal, "face boundary is not a cycle");
      for (int j = 0; j < k; ++j) {
        if (rat_den((*sol)[j]) != 1)
          fail(Errc::Internal, "face boundary has fractional cycle coordinates");
        a[j][f] = rat_num((*sol)[j]);
      }
    }
  }

  // Diagonalize the boundary image inside the cycle lattice. With
  // d = u a v, the basis kmat * uinv splits homology: the first rank
  // columns generate cyclic summands of orders d_i, the rest are free.
  SmithResult snf = smith_normal_form(a);
  ZMat kprime = z_mul(kmat, snf.uinv);

  HomologyBasis h;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.d[i][i] > 1) h.torsion.push_back(snf.d[i][i]);
  h.free_rank = k - snf.rank;

  // Canonical order and signs for the free columns.
  std::vector<ZVec> free_cols;
  for (int j = snf.rank; j < k; ++j) {
    ZVec col(ne);
    for (int i = 0; i < ne; ++i) col[i] = kprime[i][j];
    free_cols.push_back(std::move(col));
  }
  std::vector<int> sign(h.free_rank, 1);
  for (int j = 0; j < h.free_rank; ++j) {
    int lead = leading_index(free_cols[j]);
    if (lead < ne && free_cols[j][lead] < 0) {
      sign[j] = -1;
      for (Int& v : free_cols[j]) v = -v;
    }
  }
  std::vector<int> order(h.free_rank);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return leading_index(free_cols[x]) < leading_index(free_cols[y]);
  });

  for (int j : order) h.basis_cycles.push_back(q_of_z_vec(free_cols[j]));

  // Coordinate functional: left-invert the full changed basis, keep the
  // free rows, then apply the same reorder and signs.
  QMat left = q_left_inverse(q_of_z(kprime));  // k x ne
  h.coord_rows.assign(h.free_rank, QVec(ne, Rat(0)));
  for (int p = 0; p < h.free_rank; ++p) {
    int j = order[p];
    for (int e = 0; e < ne; ++e)
      h.coord_rows[p][e] = Rat(sign[j]) * left[snf.rank + j][e];
  }
  return h;
}

bool is_cycle(const SurfaceComplex& s, const Chain& x) {
  if (static_cast<int>(x.size()) != s.edge_count()) return false;
  QVec net(s.num_vertices, Rat(0));
  for (int e = 0; e < s.edge_count(); ++e) {
    net[s.head[e]] += x[e];
    net[s.tail[e]] -= x[e];
  }
  for (const Rat& v : net)
    if (v != 0) return false;
  return true;
}

QVec class_of_cycle(const SurfaceComplex& s, const HomologyBasis& h,
                    const Chain& x) {
  if (!is_cycle(s, x)) fail(Errc::NotACycle, "chain has nonzero boundary");
  return q_apply(h.coord_rows, x);
}

}  // namespace snlab
