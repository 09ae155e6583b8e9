#include "snlab/polytope.hpp"

#include <algorithm>

#include "snlab/error.hpp"
#include "snlab/linalg.hpp"

namespace snlab {

namespace {

bool vec_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

// Positive scaling to a primitive integer vector; the ray's side of the
// origin is preserved.
QVec primitive(const QVec& v) {
  Int mult(1);
  for (const Rat& x : v) mult = boost::multiprecision::lcm(mult, rat_den(x));
  Int g(0);
  for (const Rat& x : v) g = boost::multiprecision::gcd(g, Int(rat_num(x) * (mult / rat_den(x))));
  QVec out(v.size());
  if (g == 0) return v;
  Rat scale = Rat(mult) / Rat(g);
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
  return out;
}

// Double description on the cone {z : row.z <= 0} in homogeneous
// coordinates (x, t). Rays carry their tight-row sets so adjacency is the
// usual combinatorial test.
class DoubleDescription {
 public:
  DoubleDescription(int hdim, QMat rows) : d_(hdim), rows_(std::move(rows)) {}

  std::vector<QVec> run() {
    seed();
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (std::find(seed_rows_.begin(), seed_rows_.end(), r) != seed_rows_.end())
        continue;
      insert_row(r);
    }
    std::vector<QVec> out;
    out.reserve(rays_.size());
    for (const Ray& ray : rays_) out.push_back(ray.v);
    return out;
  }

 private:
  struct Ray {
    QVec v;
    std::vector<char> tight;  // indexed by row, valid for processed rows
  };

  Rat dot(int row, const QVec& v) const {
    Rat s(0);
    for (int j = 0; j < d_; ++j) s += rows_[row][j] * v[j];
    return s;
  }

  void seed() {
    // First maximal independent subset of rows; needs full rank or the
    // cone is not pointed and the polytope was not bounded after all.
    QMat acc;
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (static_cast<int>(seed_rows_.size()) == d_) break;
      acc.push_back(rows_[r]);
      if (q_rank(acc) == static_cast<int>(acc.size()))
        seed_rows_.push_back(r);
      else
        acc.pop_back();
    }
    if (static_cast<int>(seed_rows_.size()) != d_)
      fail(Errc::Internal, "halfspace system is not full rank");
    QMat binv = q_inverse(acc);
    for (int j = 0; j < d_; ++j) {
      Ray ray;
      ray.v.resize(d_);
      for (int i = 0; i < d_; ++i) ray.v[i] = -binv[i][j];
      ray.v = primitive(ray.v);
      ray.tight.assign(rows_.size(), 0);
      for (int r : seed_rows_) ray.tight[r] = dot(r, ray.v) == 0 ? 1 : 0;
      rays_.push_back(std::move(ray));
    }
    processed_ = seed_rows_;
    std::sort(processed_.begin(), processed_.end());
  }

  bool adjacent(const Ray& p, const Ray& n) const {
    for (const Ray& w : rays_) {
      if (&w == &p || &w == &n) continue;
      bool covers = true;
      for (int r : processed_) {
        if (p.tight[r] && n.tight[r] && !w.tight[r]) {
          covers = false;
          break;
        }
      }
      if (covers) return false;
    }
    return true;
  }

  void insert_row(int row) {
    std::vector<Rat> side(rays_.size());
    bool any_pos = false;
    for (size_t i = 0; i < rays_.size(); ++i) {
      side[i] = dot(row, rays_[i].v);
      if (side[i] > 0) any_pos = true;
    }
    if (!any_pos) {
      for (size_t i = 0; i < rays_.size(); ++i)
        rays_[i].tight[row] = side[i] == 0 ? 1 : 0;
      processed_.push_back(row);
      return;
    }
    std::vector<Ray> next;
    std::vector<Ray> born;
    for (size_t p = 0; p < rays_.size(); ++p) {
      if (side[p] <= 0) continue;
      for (size_t n = 0; n < rays_.size(); ++n) {
        if (side[n] >= 0) continue;
        if (!adjacent(rays_[p], rays_[n])) continue;
        Ray r;
        r.v.resize(d_);
        for (int j = 0; j < d_; ++j)
          r.v[j] = side[p] * rays_[n].v[j] - side[n] * rays_[p].v[j];
        r.v = primitive(r.v);
        r.tight.assign(rows_.size(), 0);
        for (int pr : processed_) r.tight[pr] = dot(pr, r.v) == 0 ? 1 : 0;
        r.tight[row] = 1;
        born.push_back(std::move(r));
      }
    }
    for (size_t i = 0; i < rays_.size(); ++i) {
      if (side[i] > 0) continue;
      rays_[i].tight[row] = side[i] == 0 ? 1 : 0;
      next.push_back(std::move(rays_[i]));
    }
    for (Ray& r : born) next.push_back(std::move(r));
    rays_ = std::move(next);
    processed_.push_back(row);
  }

  int d_;
  QMat rows_;
  std::vector<int> seed_rows_;
  std::vector<int> processed_;
  std::vector<Ray> rays_;
};

}  // namespace

std::vector<QVec> polytope_vertices(int dim, const std::vector<QVec>& rows) {
  if (dim <= 0) fail(Errc::Internal, "vertex enumeration in dimension zero");
  QMat homog;
  auto push_unique = [&homog](QVec r) {
    for (const QVec& seen : homog)
      if (seen == r) return;
    homog.push_back(std::move(r));
  };
  for (const QVec& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      fail(Errc::Internal, "halfspace dimension mismatch");
    QVec h = row;
    h.push_back(Rat(-1));
    push_unique(std::move(h));
  }
  QVec tpos(dim + 1, Rat(0));
  tpos[dim] = -1;
  push_unique(std::move(tpos));

  DoubleDescription dd(dim + 1, homog);
  std::vector<QVec> verts;
  for (const QVec& ray : dd.run()) {
    if (ray[dim] <= 0)
      fail(Errc::Internal, "recession ray found, polytope unbounded");
    QVec x(dim);
    for (int j = 0; j < dim; ++j) x[j] = ray[j] / ray[dim];
    verts.push_back(std::move(x));
  }
  std::sort(verts.begin(), verts.end(), vec_less);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

Polytope hull_centered(int dim, const std::vector<QVec>& points) {
  if (points.empty()) fail(Errc::Internal, "hull of an empty point set");
  {
    QMat m;
    for (const QVec& p : points) m.push_back(p);
    if (q_rank(m) != dim) fail(Errc::Internal, "hull points do not span");
  }
  Polytope poly;
  poly.dim = dim;
  // Polar body first: its vertices are this hull's facet normals.
  poly.facet_normals = polytope_vertices(dim, points);
  poly.vertices = polytope_vertices(dim, poly.facet_normals);

  for (const QVec& v : poly.vertices) {
    bool known = false;
    for (const QVec& p : points)
      if (p == v) { known = true; break; }
    if (!known) fail(Errc::Internal, "hull vertex is not an input point");
  }

  poly.incidence.resize(poly.facet_normals.size());
  for (size_t f = 0; f < poly.facet_normals.size(); ++f) {
    for (size_t v = 0; v < poly.vertices.size(); ++v) {
      Rat s(0);
      for (int j = 0; j < dim; ++j) s += poly.facet_normals[f][j] * poly.vertices[v][j];
      if (s == 1) poly.incidence[f].push_back(static_cast<int>(v));
    }
  }
  return poly;
}

}  // namespace snlab
