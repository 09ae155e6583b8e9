#include <algorithm>
#include <set>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "snlab/ball.hpp"
#include "snlab/error.hpp"

using namespace snlab;
using namespace snlab::test;

namespace {

// Independent circuit enumeration: an elementary circuit is exactly a
// nonempty set of directed arcs with in-degree equal to out-degree equal
// to one at every touched vertex, connected as a single cycle. Small edge
// counts allow checking every arc subset directly.
std::set<unsigned> circuit_masks_oracle(const SurfaceComplex& s) {
  const int ecount = s.edge_count();
  const int arcs = 2 * ecount;
  REQUIRE(arcs <= 10);
  std::set<unsigned> out;
  for (unsigned mask = 1; mask < (1u << arcs); ++mask) {
    std::vector<int> indeg(s.num_vertices, 0), outdeg(s.num_vertices, 0);
    std::vector<int> succ(s.num_vertices, -1);  // vertex -> chosen out arc
    bool ok = true;
    for (int a = 0; a < arcs && ok; ++a) {
      if (!(mask >> a & 1)) continue;
      int e = a / 2;
      int from = a % 2 == 0 ? s.tail[e] : s.head[e];
      int to = a % 2 == 0 ? s.head[e] : s.tail[e];
      if (++outdeg[from] > 1 || ++indeg[to] > 1) ok = false;
      succ[from] = a;
    }
    if (!ok) continue;
    for (int v = 0; v < s.num_vertices; ++v)
      if (indeg[v] != outdeg[v]) ok = false;
    if (!ok) continue;
    // follow successors from the first touched vertex; one cycle must
    // consume every selected arc
    int start = -1;
    int selected = 0;
    for (int a = 0; a < arcs; ++a)
      if (mask >> a & 1) {
        ++selected;
        if (start < 0) start = a % 2 == 0 ? s.tail[a / 2] : s.head[a / 2];
      }
    int cur = start, steps = 0;
    do {
      int a = succ[cur];
      cur = a % 2 == 0 ? s.head[a / 2] : s.tail[a / 2];
      ++steps;
    } while (cur != start && steps <= selected);
    if (cur == start && steps == selected) out.insert(mask);
  }
  return out;
}

unsigned mask_of_walk(const std::vector<DirEdge>& walk) {
  unsigned mask = 0;
  for (const DirEdge& d : walk) mask |= 1u << (2 * d.edge + (d.sign > 0 ? 0 : 1));
  return mask;
}

Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool contains_vec(const std::vector<QVec>& set, const QVec& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

TEST_SUITE("ball") {

TEST_CASE("circuit enumeration matches the arc subset oracle") {
  for (const char* name : {"torus.srf", "klein.srf", "rp2.srf", "sphere.srf",
                           "torus2tri.srf", "s1rp2.srf", "genus2.srf",
                           "s1k.srf", "torusw.srf"}) {
    SurfaceComplex s = load(name);
    CAPTURE(name);
    std::set<unsigned> want = circuit_masks_oracle(s);
    std::vector<Circuit> got = elementary_circuits(s, 1000000);
    CHECK(got.size() == want.size());
    std::set<unsigned> seen;
    for (const Circuit& c : got) {
      unsigned m = mask_of_walk(c.walk);
      CHECK(want.count(m) == 1);
      CHECK(seen.insert(m).second);  // each circuit listed exactly once
      CHECK(c.chain == chain_of_walk(s, c.walk));
    }
  }
}

TEST_CASE("one vertex surfaces have only single arc circuits") {
  SurfaceComplex s = load("genus2.srf");
  auto circuits = elementary_circuits(s, 100);
  CHECK(circuits.size() == 8);
  for (const Circuit& c : circuits) CHECK(c.walk.size() == 1);
}

TEST_CASE("circuit budget is enforced") {
  SurfaceComplex s = load("torus.srf");
  CHECK_THROWS_AS(elementary_circuits(s, 1), Error);
  try {
    elementary_circuits(s, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CircuitBudgetExceeded);
  }
}

TEST_CASE("square torus ball is the diamond") {
  SurfaceComplex s = load("torus.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  CHECK(ball.dim == 2);
  REQUIRE(ball.vertices.size() == 4);
  CHECK(contains_vec(ball.vertices, {Rat(1), Rat(0)}));
  CHECK(contains_vec(ball.vertices, {Rat(-1), Rat(0)}));
  CHECK(contains_vec(ball.vertices, {Rat(0), Rat(1)}));
  CHECK(contains_vec(ball.vertices, {Rat(0), Rat(-1)}));
  REQUIRE(ball.facet_normals.size() == 4);
  CHECK(contains_vec(ball.facet_normals, {Rat(1), Rat(1)}));
  CHECK(contains_vec(ball.facet_normals, {Rat(-1), Rat(1)}));
  for (const auto& row : ball.incidence) CHECK(row.size() == 2);
}

TEST_CASE("weights stretch the ball") {
  SurfaceComplex s = load("torusw.srf");  // a weighs 2, b weighs 3
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  REQUIRE(ball.vertices.size() == 4);
  CHECK(contains_vec(ball.vertices, {Rat(1, 2), Rat(0)}));
  CHECK(contains_vec(ball.vertices, {Rat(0), Rat(1, 3)}));
  CHECK(contains_vec(ball.facet_normals, {Rat(2), Rat(3)}));
  CHECK(contains_vec(ball.facet_normals, {Rat(2), Rat(-3)}));
}

TEST_CASE("klein bottle ball is a segment") {
  SurfaceComplex s = load("klein.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  CHECK(ball.dim == 1);
  REQUIRE(ball.vertices.size() == 2);
  CHECK(ball.vertices[0] == QVec{Rat(-1)});
  CHECK(ball.vertices[1] == QVec{Rat(1)});
}

TEST_CASE("genus two ball is the cross polytope") {
  SurfaceComplex s = load("genus2.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  CHECK(ball.dim == 4);
  CHECK(ball.vertices.size() == 8);
  CHECK(ball.facet_normals.size() == 16);
  for (const auto& row : ball.incidence) CHECK(row.size() == 4);
  for (const QVec& n : ball.facet_normals)
    for (const Rat& v : n) CHECK((v == 1 || v == -1));
}

TEST_CASE("ball invariants and vertex provenance") {
  for (const char* name : {"torus.srf", "klein.srf", "genus2.srf",
                           "s1rp2.srf", "s1k.srf", "torus2tri.srf",
                           "torusw.srf"}) {
    SurfaceComplex s = load(name);
    HomologyBasis h = homology_h1(s);
    NormBall ball = unit_ball(s, h, 1000000);
    CAPTURE(name);
    CHECK(ball.dim == h.free_rank);
    REQUIRE(ball.vertex_circuit.size() == ball.vertices.size());
    for (size_t v = 0; v < ball.vertices.size(); ++v) {
      // central symmetry
      QVec neg = ball.vertices[v];
      for (Rat& x : neg) x = -x;
      CHECK(contains_vec(ball.vertices, neg));
      // the recorded circuit realizes the vertex
      const Circuit& c = ball.vertex_circuit[v];
      QVec cls = class_of_cycle(s, h, c.chain);
      Rat len = chain_weight(s, c.chain);
      REQUIRE(len > 0);
      for (size_t j = 0; j < cls.size(); ++j)
        CHECK(cls[j] == len * ball.vertices[v][j]);
      // and the vertex sits on the unit sphere of the computed norm
      CHECK(stable_norm(s, h, ball.vertices[v]).value == 1);
      CHECK(gauge(ball, ball.vertices[v]) == 1);
    }
    for (size_t v = 0; v < ball.vertices.size(); ++v) {
      int on = 0;
      for (const QVec& n : ball.facet_normals)
        if (dot(n, ball.vertices[v]) == 1) ++on;
      CHECK(on >= ball.dim);
    }
  }
}

TEST_CASE("norm values of named classes") {
  SurfaceComplex t = load("torus.srf");
  HomologyBasis ht = homology_h1(t);
  CHECK(stable_norm(t, ht, {Rat(2), Rat(3)}).value == 5);
  CHECK(stable_norm(t, ht, {Rat(-2), Rat(3)}).value == 5);
  CHECK(stable_norm(t, ht, {Rat(1, 2), Rat(1, 2)}).value == 1);

  SurfaceComplex w = load("torusw.srf");
  HomologyBasis hw = homology_h1(w);
  CHECK(stable_norm(w, hw, {Rat(2), Rat(3)}).value == 13);

  SurfaceComplex k = load("klein.srf");
  HomologyBasis hk = homology_h1(k);
  CHECK(stable_norm(k, hk, {Rat(1)}).value == 1);
  CHECK(stable_norm(k, hk, {Rat(-5, 2)}).value == Rat(5, 2));

  SurfaceComplex g = load("genus2.srf");
  HomologyBasis hg = homology_h1(g);
  CHECK(stable_norm(g, hg, {Rat(1), Rat(1), Rat(1), Rat(1)}).value == 4);
  CHECK(stable_norm(g, hg, {Rat(1), Rat(0), Rat(0), Rat(-1)}).value == 2);
}

TEST_CASE("norm certificates check out") {
  SurfaceComplex s = load("torusw.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  for (const QVec& cls : {QVec{Rat(2), Rat(3)}, QVec{Rat(-1), Rat(7)},
                          QVec{Rat(1, 3), Rat(-1, 5)}}) {
    NormResult r = stable_norm(s, h, cls);
    CHECK(r.value == gauge(ball, cls));
    CHECK(is_cycle(s, r.minimizer));
    CHECK(class_of_cycle(s, h, r.minimizer) == cls);
    CHECK(chain_weight(s, r.minimizer) == r.value);
    CHECK(dot(r.covector, cls) == r.value);
    CHECK(dual_norm(ball, r.covector) <= 1);
  }
}

TEST_CASE("norm axioms on sample classes") {
  SurfaceComplex s = load("s1k.srf");
  HomologyBasis h = homology_h1(s);
  std::vector<QVec> samples = {{Rat(1), Rat(0), Rat(0)},
                               {Rat(1), Rat(1), Rat(-1)},
                               {Rat(1, 2), Rat(-1, 3), Rat(2)},
                               {Rat(0), Rat(5), Rat(1)}};
  for (const QVec& a : samples) {
    Rat na = stable_norm(s, h, a).value;
    QVec twice = a, neg = a;
    for (Rat& x : twice) x *= 2;
    for (Rat& x : neg) x = -x;
    CHECK(stable_norm(s, h, twice).value == 2 * na);
    CHECK(stable_norm(s, h, neg).value == na);
    CHECK(na > 0);
    for (const QVec& b : samples) {
      QVec sum = a;
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
      CHECK(stable_norm(s, h, sum).value <=
            na + stable_norm(s, h, b).value);
    }
  }
  QVec zero(3, Rat(0));
  NormResult r = stable_norm(s, h, zero);
  CHECK(r.value == 0);
  for (const Rat& x : r.minimizer) CHECK(x == 0);
}

TEST_CASE("minimizers decompose into circuits") {
  for (const char* name : {"torus.srf", "torusw.srf", "s1rp2.srf"}) {
    SurfaceComplex s = load(name);
    HomologyBasis h = homology_h1(s);
    CAPTURE(name);
    std::vector<QVec> classes;
    if (h.free_rank == 2)
      classes = {{Rat(2), Rat(3)}, {Rat(-1), Rat(1)}, {Rat(1, 2), Rat(0)}};
    for (const QVec& cls : classes) {
      NormResult r = stable_norm(s, h, cls);
      auto parts = minimizing_cycles(s, h, cls);
      Chain total(s.edge_count(), Rat(0));
      Rat length = 0;
      for (const auto& [lambda, circuit] : parts) {
        CHECK(lambda > 0);
        for (int e = 0; e < s.edge_count(); ++e)
          total[e] += lambda * circuit.chain[e];
        length += lambda * chain_weight(s, circuit.chain);
      }
      CHECK(length == r.value);
      CHECK(class_of_cycle(s, h, total) == cls);
      // no cancellation: the reassembled cycle weighs exactly the value
      CHECK(chain_weight(s, total) == r.value);
    }
    CHECK(minimizing_cycles(s, h, QVec(h.free_rank, Rat(0))).empty());
  }
}

TEST_CASE("flats of the torus ball") {
  SurfaceComplex s = load("torus.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);

  Flat corner = flat_of(ball, {Rat(1), Rat(0)});
  CHECK(corner.dim == 0);
  REQUIRE(corner.vertex_ids.size() == 1);
  CHECK(ball.vertices[corner.vertex_ids[0]] == QVec{Rat(1), Rat(0)});

  Flat edge = flat_of(ball, {Rat(1, 2), Rat(1, 2)});
  CHECK(edge.dim == 1);
  REQUIRE(edge.vertex_ids.size() == 2);
  CHECK(edge.covector == QVec{Rat(1), Rat(1)});
  // support covector: one exactly on the face, below one elsewhere
  for (size_t v = 0; v < ball.vertices.size(); ++v) {
    Rat val = dot(edge.covector, ball.vertices[v]);
    bool on = std::find(edge.vertex_ids.begin(), edge.vertex_ids.end(),
                        static_cast<int>(v)) != edge.vertex_ids.end();
    if (on)
      CHECK(val == 1);
    else
      CHECK(val < 1);
  }

  try {
    flat_of(ball, {Rat(2), Rat(0)});
    FAIL("expected NotOnSphere");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotOnSphere);
  }
}

TEST_CASE("flats of the genus two ball") {
  SurfaceComplex s = load("genus2.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);

  Flat vertex = flat_of(ball, {Rat(0), Rat(1), Rat(0), Rat(0)});
  CHECK(vertex.dim == 0);
  CHECK(vertex.vertex_ids.size() == 1);

  Flat facet = flat_of(ball, {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
  CHECK(facet.dim == 3);
  CHECK(facet.vertex_ids.size() == 4);
  CHECK(facet.covector == QVec{Rat(1), Rat(1), Rat(1), Rat(1)});

  Flat ridge = flat_of(ball, {Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)});
  CHECK(ridge.dim == 1);
  CHECK(ridge.vertex_ids.size() == 2);
}

TEST_CASE("dual norm reads off vertices") {
  SurfaceComplex s = load("torusw.srf");
  HomologyBasis h = homology_h1(s);
  NormBall ball = unit_ball(s, h, 1000);
  CHECK(dual_norm(ball, {Rat(1), Rat(0)}) == Rat(1, 2));
  CHECK(dual_norm(ball, {Rat(0), Rat(1)}) == Rat(1, 3));
  CHECK(dual_norm(ball, {Rat(2), Rat(3)}) == 1);
  CHECK(dual_norm(ball, {Rat(4), Rat(0)}) == 2);
  CHECK(dual_norm(ball, QVec(2, Rat(0))) == 0);
}

TEST_CASE("rank caps and empty balls") {
  SurfaceComplex big = parse_surface(genus_word(4));
  HomologyBasis h = homology_h1(big);
  REQUIRE(h.free_rank == 8);
  try {
    unit_ball(big, h, 1000);
    FAIL("expected DimensionCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionCapExceeded);
  }

  SurfaceComplex sph = load("sphere.srf");
  HomologyBasis hs = homology_h1(sph);
  NormBall ball = unit_ball(sph, hs, 1000);
  CHECK(ball.dim == 0);
  CHECK(ball.vertices.empty());

  SurfaceComplex p = load("rp2.srf");
  HomologyBasis hp = homology_h1(p);
  CHECK(unit_ball(p, hp, 1000).dim == 0);
  CHECK(stable_norm(p, hp, QVec{}).value == 0);
}

TEST_CASE("tight circuit budget still fails the ball") {
  SurfaceComplex s = load("genus2.srf");
  HomologyBasis h = homology_h1(s);
  try {
    unit_ball(s, h, 2);
    FAIL("expected CircuitBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CircuitBudgetExceeded);
  }
}

}  // TEST_SUITE
