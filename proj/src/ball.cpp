#include "snlab/ball.hpp"

#include <algorithm>

#include "snlab/error.hpp"
#include "snlab/linalg.hpp"
#include "snlab/lp.hpp"

namespace snlab {

namespace {

Rat walk_weight(const SurfaceComplex& s, const std::vector<DirEdge>& walk) {
  Rat total(0);
  for (const DirEdge& d : walk) total += s.weights[d.edge];
  return total;
}

}  // namespace

std::vector<Circuit> elementary_circuits(const SurfaceComplex& s, long cap) {
  const int nv = s.num_vertices;
  std::vector<std::vector<int>> arcs_from(nv);
  for (int e = 0; e < s.edge_count(); ++e) {
    arcs_from[s.tail[e]].push_back(2 * e);
    arcs_from[s.head[e]].push_back(2 * e + 1);
  }
  for (auto& lst : arcs_from) std::sort(lst.begin(), lst.end());

  std::vector<Circuit> out;
  std::vector<DirEdge> path;
  std::vector<bool> visited(nv, false);
  int root = 0;

  auto record = [&](const DirEdge& last) {
    if (static_cast<long>(out.size()) >= cap)
      fail(Errc::CircuitBudgetExceeded,
           "more than " + std::to_string(cap) + " elementary circuits");
    Circuit c;
    c.walk = path;
    c.walk.push_back(last);
    c.chain = chain_of_walk(s, c.walk);
    out.push_back(std::move(c));
  };

  // Rooted search: circuits through their minimum vertex only, so each
  // one is found exactly once per direction.
  auto dfs = [&](auto&& self, int u) -> void {
    for (int arc : arcs_from[u]) {
      int e = arc / 2;
      int sign = arc % 2 == 0 ? 1 : -1;
      int w = sign > 0 ? s.head[e] : s.tail[e];
      DirEdge step{e, sign};
      if (w == root) {
        record(step);
      } else if (w > root && !visited[w]) {
        visited[w] = true;
        path.push_back(step);
        self(self, w);
        path.pop_back();
        visited[w] = false;
      }
    }
  };

  for (root = 0; root < nv; ++root) {
    std::fill(visited.begin(), visited.end(), false);
    visited[root] = true;
    path.clear();
    dfs(dfs, root);
  }
  return out;
}

NormBall unit_ball(const SurfaceComplex& s, const HomologyBasis& h, long cap) {
  NormBall ball;
  ball.dim = h.free_rank;
  if (h.free_rank == 0) return ball;
  if (h.free_rank > 6)
    fail(Errc::DimensionCapExceeded,
         "rank " + std::to_string(h.free_rank) + " ball, supported up to 6");

  std::vector<Circuit> circuits = elementary_circuits(s, cap);
  std::vector<QVec> points;
  std::vector<int> point_circuit;  // same order as points
  for (size_t i = 0; i < circuits.size(); ++i) {
    QVec cls = q_apply(h.coord_rows, circuits[i].chain);
    bool zero = std::all_of(cls.begin(), cls.end(),
                            [](const Rat& v) { return v == 0; });
    if (zero) continue;
    Rat len = walk_weight(s, circuits[i].walk);
    for (Rat& v : cls) v /= len;
    points.push_back(std::move(cls));
    point_circuit.push_back(static_cast<int>(i));
  }
  if (points.empty())
    fail(Errc::Internal, "no circuit carries a nonzero class");

  std::vector<QVec> unique_points = points;
  std::sort(unique_points.begin(), unique_points.end());
  unique_points.erase(std::unique(unique_points.begin(), unique_points.end()),
                      unique_points.end());

  Polytope hull = hull_centered(h.free_rank, unique_points);
  ball.vertices = hull.vertices;
  ball.facet_normals = hull.facet_normals;
  ball.incidence = hull.incidence;

  ball.vertex_circuit.resize(ball.vertices.size());
  for (size_t v = 0; v < ball.vertices.size(); ++v) {
    int found = -1;
    for (size_t p = 0; p < points.size(); ++p) {
      if (points[p] == ball.vertices[v]) {
        found = point_circuit[p];
        break;
      }
    }
    if (found < 0) fail(Errc::Internal, "ball vertex lost its circuit");
    ball.vertex_circuit[v] = circuits[found];
  }

  for (const QVec& v : ball.vertices) {
    QVec neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    if (!std::binary_search(ball.vertices.begin(), ball.vertices.end(), neg))
      fail(Errc::Internal, "ball is not centrally symmetric");
  }
  return ball;
}

NormResult stable_norm(const SurfaceComplex& s, const HomologyBasis& h,
                       const QVec& cls) {
  const int ne = s.edge_count();
  const int b1 = h.free_rank;
  if (static_cast<int>(cls.size()) != b1)
    fail(Errc::Internal, "class coordinate size mismatch");

  L1Lp lp;
  for (int v = 0; v < s.num_vertices; ++v) {
    QVec row(ne, Rat(0));
    for (int e = 0; e < ne; ++e) {
      if (s.head[e] == v) row[e] += 1;
      if (s.tail[e] == v) row[e] -= 1;
    }
    lp.a.push_back(std::move(row));
    lp.b.push_back(Rat(0));
  }
  for (int i = 0; i < b1; ++i) {
    lp.a.push_back(h.coord_rows[i]);
    lp.b.push_back(cls[i]);
  }
  lp.w = s.weights;

  L1Result res = solve_weighted_l1(lp);
  if (res.status != LpStatus::Optimal)
    fail(Errc::Internal, std::string("norm program came back ") +
                             lp_status_name(res.status));
  NormResult out;
  out.value = res.value;
  out.minimizer = res.x;
  out.covector.assign(res.y.begin() + s.num_vertices, res.y.end());
  return out;
}

std::vector<std::pair<Rat, Circuit>> minimizing_cycles(
    const SurfaceComplex& s, const HomologyBasis& h, const QVec& cls) {
  NormResult norm = stable_norm(s, h, cls);
  Chain x = norm.minimizer;

  std::vector<std::pair<Rat, Circuit>> parts;
  auto leaving = [&](int v) -> int {
    for (int e = 0; e < s.edge_count(); ++e) {
      if (x[e] > 0 && s.tail[e] == v) return 2 * e;
      if (x[e] < 0 && s.head[e] == v) return 2 * e + 1;
    }
    return -1;
  };

  while (true) {
    int first = -1;
    for (int e = 0; e < s.edge_count(); ++e)
      if (x[e] != 0) { first = e; break; }
    if (first < 0) break;

    // Walk with the flow until a vertex repeats, then cut out the loop.
    std::vector<DirEdge> trail;
    std::vector<int> seen_at(s.num_vertices, -1);
    int v = x[first] > 0 ? s.tail[first] : s.head[first];
    seen_at[v] = 0;
    int loop_from = -1;
    while (true) {
      int arc = leaving(v);
      if (arc < 0) fail(Errc::Internal, "flow stalls mid-decomposition");
      int e = arc / 2;
      int sign = arc % 2 == 0 ? 1 : -1;
      trail.push_back(DirEdge{e, sign});
      v = sign > 0 ? s.head[e] : s.tail[e];
      if (seen_at[v] >= 0) {
        loop_from = seen_at[v];
        break;
      }
      seen_at[v] = static_cast<int>(trail.size());
    }

    Circuit c;
    c.walk.assign(trail.begin() + loop_from, trail.end());
    c.chain = chain_of_walk(s, c.walk);
    Rat lambda;
    bool start = true;
    for (const DirEdge& d : c.walk) {
      Rat amt = rat_abs(x[d.edge]);
      if (start || amt < lambda) lambda = amt;
      start = false;
    }
    for (const DirEdge& d : c.walk) x[d.edge] -= Rat(d.sign) * lambda;
    parts.emplace_back(lambda, std::move(c));
  }

  Chain rebuilt(s.edge_count(), Rat(0));
  Rat total(0);
  for (const auto& [lambda, c] : parts) {
    for (int e = 0; e < s.edge_count(); ++e) rebuilt[e] += lambda * c.chain[e];
    total += lambda * walk_weight(s, c.walk);
  }
  if (rebuilt != norm.minimizer)
    fail(Errc::Internal, "decomposition does not rebuild the minimizer");
  if (total != norm.value)
    fail(Errc::Internal, "decomposition lengths miss the norm");
  return parts;
}

Rat gauge(const NormBall& ball, const QVec& cls) {
  Rat best(0);
  for (const QVec& n : ball.facet_normals) {
    Rat v(0);
    for (size_t i = 0; i < n.size(); ++i) v += n[i] * cls[i];
    if (v > best) best = v;
  }
  return best;
}

Rat dual_norm(const NormBall& ball, const QVec& covector) {
  Rat best(0);
  for (const QVec& v : ball.vertices) {
    Rat s(0);
    for (size_t i = 0; i < v.size(); ++i) s += covector[i] * v[i];
    if (s > best) best = s;
  }
  return best;
}

Flat flat_of(const NormBall& ball, const QVec& cls) {
  if (gauge(ball, cls) != 1)
    fail(Errc::NotOnSphere,
         "class has norm " + format_rat(gauge(ball, cls)) + ", expected 1");

  // Facets tight at cls cut out the unique face holding cls in its
  // relative interior; the average of their normals supports exactly it.
  std::vector<int> tight;
  for (size_t k = 0; k < ball.facet_normals.size(); ++k) {
    Rat v(0);
    for (size_t i = 0; i < cls.size(); ++i)
      v += ball.facet_normals[k][i] * cls[i];
    if (v == 1) tight.push_back(static_cast<int>(k));
  }
  if (tight.empty()) fail(Errc::Internal, "sphere point on no facet");

  Flat flat;
  flat.covector.assign(ball.dim, Rat(0));
  for (int k : tight)
    for (int i = 0; i < ball.dim; ++i)
      flat.covector[i] += ball.facet_normals[k][i];
  for (int i = 0; i < ball.dim; ++i)
    flat.covector[i] /= Rat(static_cast<long>(tight.size()));

  for (size_t v = 0; v < ball.vertices.size(); ++v) {
    bool on_all = true;
    for (int k : tight) {
      Rat s(0);
      for (int i = 0; i < ball.dim; ++i)
        s += ball.facet_normals[k][i] * ball.vertices[v][i];
      if (s != 1) { on_all = false; break; }
    }
    if (on_all) flat.vertex_ids.push_back(static_cast<int>(v));
  }
  if (flat.vertex_ids.empty())
    fail(Errc::Internal, "face of the sphere without vertices");

  QMat diffs;
  const QVec& v0 = ball.vertices[flat.vertex_ids[0]];
  for (size_t k = 1; k < flat.vertex_ids.size(); ++k) {
    QVec d = ball.vertices[flat.vertex_ids[k]];
    for (size_t i = 0; i < d.size(); ++i) d[i] -= v0[i];
    diffs.push_back(std::move(d));
  }
  flat.dim = diffs.empty() ? 0 : q_rank(diffs);
  return flat;
}

}  // namespace snlab
