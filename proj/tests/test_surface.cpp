#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "snlab/error.hpp"
#include "snlab/surface.hpp"

using namespace snlab;
using namespace snlab::test;

namespace {

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Internal;
}

// Brute force orientability: try all 2^F per-face sign flips and see if one
// makes every label occur once with each exponent. Flipping a face negates
// every letter's sign, which is all that matters for the exponent count.
bool orientable_oracle(const SurfaceComplex& s) {
  const int fcount = s.face_count();
  for (int mask = 0; mask < (1 << fcount); ++mask) {
    std::vector<int> balance(s.edge_count(), 0);
    for (int f = 0; f < fcount; ++f) {
      int flip = (mask >> f) & 1 ? -1 : 1;
      for (const FaceSide& side : s.faces[f]) balance[side.edge] += flip * side.sign;
    }
    if (std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; }))
      return true;
  }
  return false;
}

// All coherent flip vectors, for pinning the lexicographically-first claim.
std::vector<std::vector<int>> coherent_flips_oracle(const SurfaceComplex& s) {
  std::vector<std::vector<int>> out;
  const int fcount = s.face_count();
  for (int mask = 0; mask < (1 << fcount); ++mask) {
    std::vector<int> balance(s.edge_count(), 0);
    std::vector<int> flips(fcount, 0);
    for (int f = 0; f < fcount; ++f) {
      flips[f] = (mask >> f) & 1;
      for (const FaceSide& side : s.faces[f])
        balance[side.edge] += (flips[f] ? -1 : 1) * side.sign;
    }
    if (std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; }))
      out.push_back(std::move(flips));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct OracleVerdict {
  bool valid = false;   // chain is a single closed +/-1 walk at all
  bool simple = false;  // meaningful only when valid
};

// Independent simplicity check. Enumerates every perfect matching of
// arrivals to departures at each vertex (not just the noncrossing ones the
// implementation grows), rejects matchings with a crossing chord pair by a
// direct circular-arc count, and accepts the chain when some surviving
// combination traces a single orbit through the whole support.
OracleVerdict simple_oracle(const SurfaceComplex& s, const Chain& gamma) {
  OracleVerdict verdict;
  std::vector<int> support;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (gamma[e] == 0) continue;
    if (gamma[e] != 1 && gamma[e] != -1) return verdict;
    support.push_back(e);
  }
  if (support.empty()) return verdict;

  std::vector<int> net(s.num_vertices, 0);
  for (int e : support) {
    net[s.tail[e]] += gamma[e] == 1 ? 1 : -1;
    net[s.head[e]] -= gamma[e] == 1 ? 1 : -1;
  }
  for (int b : net)
    if (b != 0) return verdict;

  std::vector<int> comp(s.num_vertices, -1);
  std::vector<int> queue{s.tail[support[0]]};
  comp[queue[0]] = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : support)
      for (int w : {s.tail[e], s.head[e]})
        if ((s.tail[e] == v || s.head[e] == v) && comp[w] < 0) {
          comp[w] = 0;
          queue.push_back(w);
        }
  }
  for (int e : support)
    if (comp[s.tail[e]] < 0 || comp[s.head[e]] < 0) return verdict;
  verdict.valid = true;

  // Arrival and departure points per vertex, each carrying its rotation
  // position and, for departures, the directed edge the strand continues on.
  struct Point {
    int pos;
    int edge;
    int end;
  };
  std::vector<std::vector<Point>> arrive(s.num_vertices), depart(s.num_vertices);
  for (int e : support) {
    int dep_end = gamma[e] == 1 ? kTail : kHead;
    int arr_end = gamma[e] == 1 ? kHead : kTail;
    auto [dv, dp] = s.end_place[2 * e + dep_end];
    auto [av, ap] = s.end_place[2 * e + arr_end];
    depart[dv].push_back({dp, e, dep_end});
    arrive[av].push_back({ap, e, arr_end});
  }

  auto crosses = [&s](int v, int a1, int b1, int a2, int b2) {
    int deg = static_cast<int>(s.rotation[v].size());
    int inside = 0;
    for (int p = (a1 + 1) % deg; p != b1; p = (p + 1) % deg)
      if (p == a2 || p == b2) ++inside;
    return inside == 1;
  };

  // All noncrossing matchings per vertex, as arrival-index -> departure-index.
  std::vector<std::vector<std::vector<int>>> options(s.num_vertices);
  for (int v = 0; v < s.num_vertices; ++v) {
    int n = static_cast<int>(arrive[v].size());
    if (static_cast<int>(depart[v].size()) != n) return verdict;  // unreachable
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j)
          if (crosses(v, arrive[v][i].pos, depart[v][perm[i]].pos,
                      arrive[v][j].pos, depart[v][perm[j]].pos))
            ok = false;
      if (ok) options[v].push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // next[2e+arrival_end] = directed edge the strand continues on.
  std::vector<int> choice(s.num_vertices, 0);
  auto single_orbit = [&]() {
    std::map<int, DirEdge> next;
    for (int v = 0; v < s.num_vertices; ++v) {
      const std::vector<int>& m = options[v][choice[v]];
      for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        const Point& in = arrive[v][i];
        const Point& out = depart[v][m[i]];
        next[2 * in.edge + in.end] = DirEdge{out.edge, out.end == kTail ? 1 : -1};
      }
    }
    int e0 = support[0];
    DirEdge cur{e0, gamma[e0] == 1 ? 1 : -1};
    std::set<int> seen;
    while (seen.insert(cur.edge).second) {
      int arr_end = cur.sign == 1 ? kHead : kTail;
      cur = next.at(2 * cur.edge + arr_end);
    }
    return static_cast<int>(seen.size()) == static_cast<int>(support.size()) &&
           cur.edge == e0 && (cur.sign == 1) == (gamma[e0] == 1);
  };

  std::function<bool(int)> sweep = [&](int v) -> bool {
    if (v == s.num_vertices) return single_orbit();
    for (size_t k = 0; k < options[v].size(); ++k) {
      choice[v] = static_cast<int>(k);
      if (sweep(v + 1)) return true;
    }
    return false;
  };
  verdict.simple = sweep(0);
  return verdict;
}

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("one square torus") {
  SurfaceComplex s = load("torus.srf");
  CHECK(s.name == "torus");
  CHECK(s.num_vertices == 1);
  CHECK(s.edge_count() == 2);
  CHECK(s.face_count() == 1);
  CHECK(s.euler_characteristic() == 0);
  CHECK(is_orientable(s));
  CHECK(s.label_id("a") == 0);
  CHECK(s.label_id("b") == 1);
  CHECK(s.label_id("z") == -1);
  CHECK(s.weights[0] == 1);
}

TEST_CASE("klein bottle and projective plane") {
  SurfaceComplex k = load("klein.srf");
  CHECK(k.num_vertices == 1);
  CHECK(k.edge_count() == 2);
  CHECK(k.euler_characteristic() == 0);
  CHECK(!is_orientable(k));

  SurfaceComplex p = load("rp2.srf");
  CHECK(p.num_vertices == 1);
  CHECK(p.edge_count() == 1);
  CHECK(p.euler_characteristic() == 1);
  CHECK(!is_orientable(p));

  SurfaceComplex sph = load("sphere.srf");
  CHECK(sph.num_vertices == 2);
  CHECK(sph.euler_characteristic() == 2);
  CHECK(is_orientable(sph));
}

TEST_CASE("multi face complexes") {
  SurfaceComplex t = load("torus2tri.srf");
  CHECK(t.face_count() == 2);
  CHECK(t.edge_count() == 3);
  CHECK(t.num_vertices == 1);
  CHECK(t.euler_characteristic() == 0);
  CHECK(is_orientable(t));

  SurfaceComplex g = load("genus2.srf");
  CHECK(g.num_vertices == 1);
  CHECK(g.euler_characteristic() == -2);
  CHECK(is_orientable(g));

  SurfaceComplex n = load("s1rp2.srf");
  CHECK(n.euler_characteristic() == -1);
  CHECK(!is_orientable(n));
}

TEST_CASE("rotation system bookkeeping") {
  for (const char* name :
       {"torus.srf", "klein.srf", "rp2.srf", "sphere.srf", "genus2.srf",
        "s1rp2.srf", "s1k.srf", "torus2tri.srf"}) {
    SurfaceComplex s = load(name);
    CAPTURE(name);
    int total = 0;
    for (const auto& ring : s.rotation) total += static_cast<int>(ring.size());
    CHECK(total == 2 * s.edge_count());
    for (int e = 0; e < s.edge_count(); ++e)
      for (int end : {kTail, kHead}) {
        auto [v, i] = s.end_place[2 * e + end];
        CHECK(s.end_vertex(e, end) == v);
        CHECK((s.rotation[v][i] == EdgeEnd{e, end}));
      }
  }
}

TEST_CASE("parse rejects malformed input") {
  CHECK(thrown_code([] { parse_surface("surface x\nface a b -a\n"); }) ==
        Errc::DuplicateLabelCount);
  CHECK(thrown_code([] { parse_surface("surface x\nface a -a a -a\n"); }) ==
        Errc::DuplicateLabelCount);
  CHECK(thrown_code([] { parse_surface("surface x\nface a -a\nface b -b\n"); }) ==
        Errc::Disconnected);
  CHECK(thrown_code([] {
          parse_surface("surface x\nface a b -a -b\nweight a 0/1\n");
        }) == Errc::NonPositiveWeight);
  CHECK(thrown_code([] {
          parse_surface("surface x\nface a b -a -b\nweight a -2/1\n");
        }) == Errc::NonPositiveWeight);
  CHECK(thrown_code([] { parse_surface("surface x\nface a b -a -b\nbogus 1\n"); }) ==
        Errc::SyntaxError);
  CHECK(thrown_code([] { parse_surface("face a b -a -b\n"); }) == Errc::SyntaxError);
  CHECK(thrown_code([] { parse_surface("surface x\n"); }) == Errc::SyntaxError);
  CHECK(thrown_code([] {
          parse_surface("surface x\nface a b -a -b\nweight c 1/1\n");
        }) == Errc::SyntaxError);
  CHECK(thrown_code([] {
          parse_surface("surface x\nface a b -a -b\nweight a 1/1\nweight a 2/1\n");
        }) == Errc::SyntaxError);
}

TEST_CASE("serialize then parse is the identity") {
  for (const char* name : {"torus.srf", "klein.srf", "torusw.srf", "s1k.srf",
                           "torus2tri.srf"}) {
    SurfaceComplex a = load(name);
    SurfaceComplex b = parse_surface(serialize_surface(a));
    CAPTURE(name);
    CHECK(a.name == b.name);
    CHECK(a.labels == b.labels);
    CHECK(a.weights == b.weights);
    REQUIRE(a.face_count() == b.face_count());
    for (int f = 0; f < a.face_count(); ++f) {
      REQUIRE(a.faces[f].size() == b.faces[f].size());
      for (size_t i = 0; i < a.faces[f].size(); ++i) {
        CHECK(a.faces[f][i].edge == b.faces[f][i].edge);
        CHECK(a.faces[f][i].sign == b.faces[f][i].sign);
      }
    }
    CHECK(a.num_vertices == b.num_vertices);
  }
}

TEST_CASE("orientability matches the flip oracle") {
  std::vector<std::string> words = {
      "surface t\nface a b -a -b\n",
      "surface k\nface a b a -b\n",
      "surface k2\nface a b -a b\n",
      "surface p\nface a a\n",
      "surface s\nface a -a\n",
      "surface hex\nface a b c -a -b -c\n",
      "surface cc2\nface a a b b\n",
      "surface tri2\nface a b c\nface -a -b -c\n",
      "surface tris\nface a b c\nface -c -b -a\n",
      "surface g2\nface a b -a -b c d -c -d\n",
      "surface m\nface a b -a -b c c\n",
      "surface flip\nface a b c\nface a b c\n",
  };
  for (const std::string& w : words) {
    SurfaceComplex s = parse_surface(w);
    CAPTURE(w);
    CHECK(is_orientable(s) == orientable_oracle(s));
  }
}

TEST_CASE("consistent orientation is coherent and lexicographically first") {
  for (const std::string& w :
       {std::string("surface t\nface a b -a -b\n"),
        std::string("surface tri2\nface a b c\nface -a -b -c\n"),
        std::string("surface flip\nface a b c\nface a b c\n"),
        std::string("surface s\nface a -a\n")}) {
    SurfaceComplex s = parse_surface(w);
    CAPTURE(w);
    auto all = coherent_flips_oracle(s);
    REQUIRE(!all.empty());
    std::vector<int> flips = consistent_orientation(s);
    CHECK(flips == all.front());

    SurfaceComplex r = reoriented(s, flips);
    CHECK(r.num_vertices == s.num_vertices);
    CHECK(r.weights == s.weights);
    std::vector<int> balance(r.edge_count(), 0);
    for (const auto& face : r.faces)
      for (const FaceSide& side : face) balance[side.edge] += side.sign;
    for (int b : balance) CHECK(b == 0);
  }

  CHECK(thrown_code([] {
          consistent_orientation(parse_surface("surface k\nface a b a -b\n"));
        }) == Errc::NotOrientable);
}

TEST_CASE("simplicity of named chains") {
  SurfaceComplex t = load("torus.srf");
  CHECK(is_simple_on_surface(t, chain_tokens(t, "a")));
  CHECK(is_simple_on_surface(t, chain_tokens(t, "a b")));
  CHECK(is_simple_on_surface(t, chain_tokens(t, "a -b")));
  CHECK(thrown_code([&] {
          is_simple_on_surface(t, chain_tokens(t, "a a"));
        }) == Errc::NotAClosedWalk);
  CHECK(thrown_code([&] {
          is_simple_on_surface(t, Chain(t.edge_count(), Rat(0)));
        }) == Errc::NotAClosedWalk);

  SurfaceComplex tri = load("torus2tri.srf");
  CHECK(is_simple_on_surface(tri, chain_tokens(tri, "a")));
  CHECK(is_simple_on_surface(tri, chain_tokens(tri, "a b")));
  CHECK(!is_simple_on_surface(tri, chain_tokens(tri, "a -b c")));
  CHECK(!is_simple_on_surface(tri, chain_tokens(tri, "a b -c")));
  CHECK(!is_simple_on_surface(tri, chain_tokens(tri, "a -b -c")));

  SurfaceComplex m = load("s1rp2.srf");
  CHECK(is_simple_on_surface(m, chain_tokens(m, "a")));
  CHECK(is_simple_on_surface(m, chain_tokens(m, "c")));
  CHECK(!is_simple_on_surface(m, chain_tokens(m, "b c")));
}

TEST_CASE("simplicity agrees with the matching oracle everywhere") {
  for (const char* name : {"torus.srf", "klein.srf", "rp2.srf", "sphere.srf",
                           "torus2tri.srf", "s1rp2.srf", "genus2.srf",
                           "s1k.srf"}) {
    SurfaceComplex s = load(name);
    const int ecount = s.edge_count();
    REQUIRE(ecount <= 4);
    long total = 1;
    for (int i = 0; i < ecount; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      Chain gamma(ecount, Rat(0));
      long rest = code;
      for (int e = 0; e < ecount; ++e) {
        int digit = static_cast<int>(rest % 3);
        rest /= 3;
        gamma[e] = digit == 2 ? -1 : digit;
      }
      OracleVerdict want = simple_oracle(s, gamma);
      CAPTURE(name);
      CAPTURE(code);
      bool threw = false;
      bool got = false;
      try {
        got = is_simple_on_surface(s, gamma);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAClosedWalk);
        threw = true;
      }
      CHECK(threw == !want.valid);
      if (!threw) CHECK(got == want.simple);
    }
  }
}

TEST_CASE("simple resolutions realize their chain") {
  for (const char* name : {"torus.srf", "torus2tri.srf", "s1rp2.srf"}) {
    SurfaceComplex s = load(name);
    for (const std::string& text : {std::string("a"), std::string("a b")}) {
      Chain gamma = chain_tokens(s, text);
      auto walk = simple_resolution(s, gamma);
      REQUIRE(walk.has_value());
      CAPTURE(name);
      CAPTURE(text);
      Chain back = chain_of_walk(s, *walk);
      CHECK(back == gamma);
      for (size_t i = 0; i < walk->size(); ++i) {
        const DirEdge& cur = (*walk)[i];
        const DirEdge& nxt = (*walk)[(i + 1) % walk->size()];
        int arrive = s.end_vertex(cur.edge, cur.sign == 1 ? kHead : kTail);
        int leave = s.end_vertex(nxt.edge, nxt.sign == 1 ? kTail : kHead);
        CHECK(arrive == leave);
      }
    }
  }
}

TEST_CASE("closed walks and weights") {
  SurfaceComplex w = load("torusw.srf");
  CHECK(chain_weight(w, chain_tokens(w, "a b")) == 5);
  CHECK(chain_weight(w, chain_tokens(w, "a -b")) == 5);
  Chain twice = chain_tokens(w, "a");
  twice[w.label_id("a")] = Rat(7, 2);
  CHECK(chain_weight(w, twice) == 7);

  auto walk = closed_walk_of(w, chain_tokens(w, "a b"));
  CHECK(walk.size() == 2);
  CHECK(chain_of_walk(w, walk) == chain_tokens(w, "a b"));
}

}  // TEST_SUITE
