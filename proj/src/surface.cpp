#include "snlab/surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "snlab/error.hpp"

namespace snlab {

namespace {

// Plain union-find, path halving.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

constexpr int kOut = 0;
constexpr int kIn = 1;

struct Slot {
  int corner = -1;
  int type = kOut;
  bool operator==(const Slot& o) const {
    return corner == o.corner && type == o.type;
  }
};

int end_id(const EdgeEnd& e) { return 2 * e.edge + e.end; }

EdgeEnd start_end(const FaceSide& s) {
  return EdgeEnd{s.edge, s.sign > 0 ? kTail : kHead};
}
EdgeEnd finish_end(const FaceSide& s) {
  return EdgeEnd{s.edge, s.sign > 0 ? kHead : kTail};
}

}  // namespace

int SurfaceComplex::label_id(const std::string& label) const {
  for (int i = 0; i < edge_count(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

SurfaceComplex build_complex(std::string name, std::vector<std::string> labels,
                             std::vector<Rat> weights,
                             std::vector<std::vector<FaceSide>> faces) {
  SurfaceComplex s;
  s.name = std::move(name);
  s.labels = std::move(labels);
  s.weights = std::move(weights);
  s.faces = std::move(faces);
  const int n_edges = s.edge_count();

  if (s.faces.empty()) fail(Errc::SyntaxError, "no faces");
  for (const auto& w : s.faces)
    if (w.empty()) fail(Errc::SyntaxError, "empty face word");

  // Every label must be used exactly twice for the polygons to close up.
  s.occurrences.assign(n_edges, {});
  std::vector<int> count(n_edges, 0);
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& word = s.faces[f];
    for (int i = 0; i < static_cast<int>(word.size()); ++i) {
      int e = word[i].edge;
      if (count[e] < 2) s.occurrences[e][count[e]] = Occurrence{f, i, word[i].sign};
      ++count[e];
    }
  }
  for (int e = 0; e < n_edges; ++e)
    if (count[e] != 2)
      fail(Errc::DuplicateLabelCount, "label '" + s.labels[e] + "' occurs " +
                                          std::to_string(count[e]) +
                                          " times, expected 2");
  for (int e = 0; e < n_edges; ++e)
    if (s.weights[e] <= 0)
      fail(Errc::NonPositiveWeight,
           "weight of '" + s.labels[e] + "' is " + format_rat(s.weights[e]));

  // Corners: corner i of a face sits between sides i-1 and i. Each side
  // hands its start end to the corner at its left (slot "out") and its
  // finish end to the next corner (slot "in").
  std::vector<int> face_offset(s.face_count() + 1, 0);
  for (int f = 0; f < s.face_count(); ++f)
    face_offset[f + 1] = face_offset[f] + static_cast<int>(s.faces[f].size());
  const int n_corners = face_offset.back();

  std::vector<std::array<EdgeEnd, 2>> corner_end(n_corners);  // [kOut], [kIn]
  std::vector<std::vector<Slot>> slots_of_end(2 * n_edges);
  Dsu glue(2 * n_edges + n_corners);
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& word = s.faces[f];
    const int len = static_cast<int>(word.size());
    for (int i = 0; i < len; ++i) {
      int c_here = face_offset[f] + i;
      int c_next = face_offset[f] + (i + 1) % len;
      EdgeEnd a = start_end(word[i]);
      EdgeEnd b = finish_end(word[i]);
      corner_end[c_here][kOut] = a;
      corner_end[c_next][kIn] = b;
      slots_of_end[end_id(a)].push_back(Slot{c_here, kOut});
      slots_of_end[end_id(b)].push_back(Slot{c_next, kIn});
      glue.unite(2 * n_edges + c_here, end_id(a));
      glue.unite(2 * n_edges + c_next, end_id(b));
    }
  }
  for (int e = 0; e < 2 * n_edges; ++e)
    if (slots_of_end[e].size() != 2)
      fail(Errc::Internal, "edge end with " +
                               std::to_string(slots_of_end[e].size()) + " slots");

  // Vertices are the equivalence classes, numbered by first edge end seen.
  std::vector<int> vertex_of_end(2 * n_edges, -1);
  std::map<int, int> root_to_vertex;
  for (int e = 0; e < 2 * n_edges; ++e) {
    int r = glue.find(e);
    auto it = root_to_vertex.find(r);
    if (it == root_to_vertex.end())
      it = root_to_vertex.emplace(r, static_cast<int>(root_to_vertex.size())).first;
    vertex_of_end[e] = it->second;
  }
  s.num_vertices = static_cast<int>(root_to_vertex.size());
  s.tail.resize(n_edges);
  s.head.resize(n_edges);
  for (int e = 0; e < n_edges; ++e) {
    s.tail[e] = vertex_of_end[2 * e + kTail];
    s.head[e] = vertex_of_end[2 * e + kHead];
  }

  Dsu conn(s.num_vertices);
  for (int e = 0; e < n_edges; ++e) conn.unite(s.tail[e], s.head[e]);
  for (int v = 1; v < s.num_vertices; ++v)
    if (conn.find(v) != conn.find(0)) fail(Errc::Disconnected, "complex is not connected");

  // The link of each vertex is one circle alternating corners and edge
  // ends. Walk it: leave a corner through one slot, land on an end, hop to
  // the end's other slot, and leave that corner through its other slot.
  s.rotation.assign(s.num_vertices, {});
  s.end_place.assign(2 * n_edges, {-1, -1});
  std::vector<bool> corner_done(n_corners, false);
  for (int c0 = 0; c0 < n_corners; ++c0) {
    if (corner_done[c0]) continue;
    int v = vertex_of_end[end_id(corner_end[c0][kOut])];
    Slot state{c0, kOut};
    do {
      corner_done[state.corner] = true;
      EdgeEnd e = corner_end[state.corner][state.type];
      if (s.end_place[end_id(e)].first != -1)
        fail(Errc::Internal, "edge end visited twice in link walk");
      s.end_place[end_id(e)] = {v, static_cast<int>(s.rotation[v].size())};
      s.rotation[v].push_back(e);
      const auto& pair = slots_of_end[end_id(e)];
      Slot other = (pair[0] == state) ? pair[1] : pair[0];
      state = Slot{other.corner, 1 - other.type};
    } while (!(state.corner == c0 && state.type == kOut));
  }
  for (int e = 0; e < 2 * n_edges; ++e)
    if (s.end_place[e].first < 0) fail(Errc::Internal, "edge end missed by link walk");

  return s;
}

namespace {

struct ParsedLine {
  std::string keyword;
  std::vector<std::string> args;
};

std::vector<ParsedLine> tokenize(const std::string& text) {
  std::vector<ParsedLine> out;
  std::istringstream all(text);
  std::string line;
  while (std::getline(all, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    ParsedLine p;
    if (!(ls >> p.keyword)) continue;
    std::string tok;
    while (ls >> tok) p.args.push_back(tok);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

SurfaceComplex parse_surface(const std::string& text) {
  std::string name;
  bool have_name = false;
  std::vector<std::string> labels;
  std::vector<std::vector<FaceSide>> faces;
  std::vector<std::pair<std::string, std::string>> weight_lines;

  auto intern = [&labels](const std::string& label) {
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
      if (labels[i] == label) return i;
    labels.push_back(label);
    return static_cast<int>(labels.size()) - 1;
  };

  for (const ParsedLine& line : tokenize(text)) {
    if (line.keyword == "surface") {
      if (have_name) fail(Errc::SyntaxError, "second 'surface' line; one surface per file");
      if (line.args.size() != 1) fail(Errc::SyntaxError, "'surface' wants exactly one name");
      name = line.args[0];
      have_name = true;
    } else if (line.keyword == "face") {
      if (line.args.empty()) fail(Errc::SyntaxError, "'face' with no letters");
      std::vector<FaceSide> word;
      for (const std::string& tok : line.args) {
        int sign = 1;
        std::string label = tok;
        if (label[0] == '-') {
          sign = -1;
          label.erase(0, 1);
        }
        if (label.empty() || label[0] == '-')
          fail(Errc::SyntaxError, "bad edge token '" + tok + "'");
        word.push_back(FaceSide{intern(label), sign});
      }
      faces.push_back(std::move(word));
    } else if (line.keyword == "weight") {
      if (line.args.size() != 2) fail(Errc::SyntaxError, "'weight' wants label and value");
      weight_lines.emplace_back(line.args[0], line.args[1]);
    } else if (line.keyword == "map" || line.keyword == "prescribe") {
      continue;  // audit / construction sections, handled elsewhere
    } else {
      fail(Errc::SyntaxError, "unknown directive '" + line.keyword + "'");
    }
  }
  if (!have_name) fail(Errc::SyntaxError, "missing 'surface' line");
  if (faces.empty()) fail(Errc::SyntaxError, "no 'face' lines");

  std::vector<Rat> weights(labels.size(), Rat(1));
  std::vector<bool> seen(labels.size(), false);
  for (const auto& [label, value] : weight_lines) {
    int e = -1;
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
      if (labels[i] == label) { e = i; break; }
    if (e < 0) fail(Errc::SyntaxError, "weight for unknown label '" + label + "'");
    if (seen[e]) fail(Errc::SyntaxError, "duplicate weight for '" + label + "'");
    seen[e] = true;
    weights[e] = parse_rat(value);
  }
  return build_complex(std::move(name), std::move(labels), std::move(weights),
                       std::move(faces));
}

std::string serialize_surface(const SurfaceComplex& s) {
  std::ostringstream out;
  out << "surface " << s.name << "\n";
  for (const auto& word : s.faces) {
    out << "face";
    for (const FaceSide& side : word)
      out << ' ' << (side.sign < 0 ? "-" : "") << s.labels[side.edge];
    out << "\n";
  }
  for (int e = 0; e < s.edge_count(); ++e)
    out << "weight " << s.labels[e] << ' ' << format_rat_frac(s.weights[e]) << "\n";
  return out.str();
}

namespace {

// Face flip parities: gluing an edge whose letters carry equal exponents
// forces the two faces onto opposite flips; opposite exponents force equal
// flips. Returns empty on contradiction.
std::optional<std::vector<int>> orientation_flips(const SurfaceComplex& s) {
  std::vector<int> color(s.face_count(), -1);
  for (int root = 0; root < s.face_count(); ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;  // unflipped root is lexicographically first
    std::vector<int> queue{root};
    while (!queue.empty()) {
      int f = queue.back();
      queue.pop_back();
      for (int e = 0; e < s.edge_count(); ++e) {
        const auto& occ = s.occurrences[e];
        bool touches = occ[0].face == f || occ[1].face == f;
        if (!touches) continue;
        int want = occ[0].sign == occ[1].sign ? 1 : 0;
        int f2 = occ[0].face == f ? occ[1].face : occ[0].face;
        if (occ[0].face == occ[1].face) {
          if (want == 1) return std::nullopt;  // one-face edge gluing with a twist
          continue;
        }
        int c2 = color[f] ^ want;
        if (color[f2] == -1) {
          color[f2] = c2;
          queue.push_back(f2);
        } else if (color[f2] != c2) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

}  // namespace

bool is_orientable(const SurfaceComplex& s) {
  return orientation_flips(s).has_value();
}

std::vector<int> consistent_orientation(const SurfaceComplex& s) {
  auto flips = orientation_flips(s);
  if (!flips) fail(Errc::NotOrientable, "surface '" + s.name + "' is not orientable");
  return *flips;
}

SurfaceComplex reoriented(const SurfaceComplex& s, const std::vector<int>& flips) {
  std::vector<std::vector<FaceSide>> faces = s.faces;
  for (int f = 0; f < s.face_count(); ++f) {
    if (!flips[f]) continue;
    std::reverse(faces[f].begin(), faces[f].end());
    for (FaceSide& side : faces[f]) side.sign = -side.sign;
  }
  SurfaceComplex out = build_complex(s.name, s.labels, s.weights, std::move(faces));
  if (out.num_vertices != s.num_vertices)
    fail(Errc::Internal, "reorientation changed the vertex count");
  return out;
}

namespace {

// Shared validation for walk-valued chains: coefficients in {-1,0,1},
// conserved flow at every vertex, connected support.
std::vector<int> validate_closed_chain(const SurfaceComplex& s, const Chain& gamma) {
  if (static_cast<int>(gamma.size()) != s.edge_count())
    fail(Errc::Internal, "chain length does not match edge count");
  std::vector<int> support;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (gamma[e] == 0) continue;
    if (gamma[e] != 1 && gamma[e] != -1)
      fail(Errc::NotAClosedWalk,
           "coefficient " + format_rat(gamma[e]) + " on '" + s.labels[e] +
               "' is not in {-1,0,1}");
    support.push_back(e);
  }
  if (support.empty()) fail(Errc::NotAClosedWalk, "empty chain");
  std::vector<Rat> net(s.num_vertices, Rat(0));
  for (int e : support) {
    net[s.tail[e]] += gamma[e];
    net[s.head[e]] -= gamma[e];
  }
  for (int v = 0; v < s.num_vertices; ++v)
    if (net[v] != 0) fail(Errc::NotAClosedWalk, "flow not conserved at a vertex");
  Dsu conn(s.num_vertices);
  for (int e : support) conn.unite(s.tail[e], s.head[e]);
  int root = conn.find(s.tail[support[0]]);
  for (int e : support)
    if (conn.find(s.tail[e]) != root || conn.find(s.head[e]) != root)
      fail(Errc::NotAClosedWalk, "support is not connected");
  return support;
}

struct StrandPoint {
  int rot_pos;
  bool out;
};

// All pairings of in-strands with out-strands whose chords do not cross,
// as lists of (in position, out position). Points arrive sorted by
// circular position; cutting the circle anywhere preserves crossings.
void noncrossing_matchings(const std::vector<StrandPoint>& pts,
                           std::vector<std::pair<int, int>>& current,
                           std::vector<std::vector<std::pair<int, int>>>& out) {
  if (pts.empty()) {
    out.push_back(current);
    return;
  }
  const StrandPoint& first = pts[0];
  for (size_t k = 1; k < pts.size(); ++k) {
    if (pts[k].out == first.out) continue;
    std::vector<StrandPoint> inside(pts.begin() + 1, pts.begin() + k);
    std::vector<StrandPoint> outside(pts.begin() + k + 1, pts.end());
    if (inside.size() % 2 != 0) continue;
    std::vector<std::vector<std::pair<int, int>>> left;
    std::vector<std::pair<int, int>> scratch;
    noncrossing_matchings(inside, scratch, left);
    for (const auto& lm : left) {
      auto pair = first.out ? std::make_pair(pts[k].rot_pos, first.rot_pos)
                            : std::make_pair(first.rot_pos, pts[k].rot_pos);
      size_t mark = current.size();
      current.push_back(pair);
      current.insert(current.end(), lm.begin(), lm.end());
      noncrossing_matchings(outside, current, out);
      current.resize(mark);
    }
  }
}

struct ResolutionSearch {
  const SurfaceComplex& s;
  const Chain& gamma;
  std::vector<int> support;
  // Vertices that carry strands, with their candidate matchings.
  std::vector<int> active_vertices;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> choices;
  // chosen[v-index]: map in position -> out position for the current pick.
  std::vector<std::map<int, int>> chosen;

  explicit ResolutionSearch(const SurfaceComplex& sc, const Chain& g)
      : s(sc), gamma(g) {
    support = validate_closed_chain(s, gamma);
    std::vector<std::vector<StrandPoint>> pts(s.num_vertices);
    for (int e : support) {
      bool forward = gamma[e] > 0;
      // Tail end carries the outgoing strand of a forward edge.
      auto [vt, pt] = s.end_place[2 * e + kTail];
      auto [vh, ph] = s.end_place[2 * e + kHead];
      pts[vt].push_back(StrandPoint{pt, forward});
      pts[vh].push_back(StrandPoint{ph, !forward});
    }
    for (int v = 0; v < s.num_vertices; ++v) {
      if (pts[v].empty()) continue;
      std::sort(pts[v].begin(), pts[v].end(),
                [](const StrandPoint& a, const StrandPoint& b) {
                  return a.rot_pos < b.rot_pos;
                });
      std::vector<std::vector<std::pair<int, int>>> ms;
      std::vector<std::pair<int, int>> scratch;
      noncrossing_matchings(pts[v], scratch, ms);
      if (ms.empty()) continue;  // handled below: no resolution at all
      active_vertices.push_back(v);
      choices.push_back(std::move(ms));
    }
    chosen.resize(active_vertices.size());
    // A vertex whose strands admit no noncrossing pairing sinks the search.
    size_t carrying = 0;
    for (int v = 0; v < s.num_vertices; ++v)
      if (!pts[v].empty()) ++carrying;
    complete = carrying == active_vertices.size();
  }

  bool complete = false;

  // Directed successor through the chosen matchings; -1 when undefined.
  DirEdge step(const DirEdge& d, const std::vector<int>& pick) const {
    int arrive_end = d.sign > 0 ? kHead : kTail;
    auto [v, pos] = s.end_place[2 * d.edge + arrive_end];
    int vi = static_cast<int>(
        std::lower_bound(active_vertices.begin(), active_vertices.end(), v) -
        active_vertices.begin());
    const auto& matching = choices[vi][pick[vi]];
    for (const auto& [in_pos, out_pos] : matching) {
      if (in_pos != pos) continue;
      EdgeEnd out_end = s.rotation[v][out_pos];
      return DirEdge{out_end.edge, out_end.end == kTail ? 1 : -1};
    }
    return DirEdge{-1, 0};
  }

  std::optional<std::vector<DirEdge>> search() {
    if (!complete) return std::nullopt;
    std::vector<int> pick(active_vertices.size(), 0);
    return try_from(pick, 0);
  }

  std::optional<std::vector<DirEdge>> try_from(std::vector<int>& pick, size_t at) {
    if (at == active_vertices.size()) {
      DirEdge start{support[0], gamma[support[0]] > 0 ? 1 : -1};
      std::vector<DirEdge> walk{start};
      DirEdge cur = start;
      while (true) {
        cur = step(cur, pick);
        if (cur.edge < 0) fail(Errc::Internal, "matching lost a strand");
        if (cur == start) break;
        walk.push_back(cur);
        if (walk.size() > support.size()) fail(Errc::Internal, "runaway walk");
      }
      if (walk.size() == support.size()) return walk;
      return std::nullopt;
    }
    for (size_t c = 0; c < choices[at].size(); ++c) {
      pick[at] = static_cast<int>(c);
      if (auto w = try_from(pick, at + 1)) return w;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::vector<DirEdge>> simple_resolution(const SurfaceComplex& s,
                                                      const Chain& gamma) {
  ResolutionSearch rs(s, gamma);
  return rs.search();
}

bool is_simple_on_surface(const SurfaceComplex& s, const Chain& gamma) {
  return simple_resolution(s, gamma).has_value();
}

std::vector<DirEdge> closed_walk_of(const SurfaceComplex& s, const Chain& gamma) {
  std::vector<int> support = validate_closed_chain(s, gamma);
  // Hierholzer over the directed support; every strand is one arc.
  std::vector<std::vector<DirEdge>> out(s.num_vertices);
  for (int e : support) {
    int sgn = gamma[e] > 0 ? 1 : -1;
    int from = sgn > 0 ? s.tail[e] : s.head[e];
    out[from].push_back(DirEdge{e, sgn});
  }
  for (auto& lst : out)
    std::sort(lst.begin(), lst.end(), [](const DirEdge& a, const DirEdge& b) {
      return a.edge < b.edge;
    });
  int start_e = support[0];
  int v0 = gamma[start_e] > 0 ? s.tail[start_e] : s.head[start_e];
  std::vector<size_t> it(s.num_vertices, 0);
  std::vector<int> vstack{v0};
  std::vector<DirEdge> astack, circuit;
  while (!vstack.empty()) {
    int v = vstack.back();
    if (it[v] < out[v].size()) {
      DirEdge a = out[v][it[v]++];
      vstack.push_back(a.sign > 0 ? s.head[a.edge] : s.tail[a.edge]);
      astack.push_back(a);
    } else {
      vstack.pop_back();
      if (!astack.empty()) {
        circuit.push_back(astack.back());
        astack.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != support.size())
    fail(Errc::Internal, "walk construction missed strands");
  return circuit;
}

Rat chain_weight(const SurfaceComplex& s, const Chain& x) {
  Rat total(0);
  for (int e = 0; e < s.edge_count(); ++e) total += s.weights[e] * rat_abs(x[e]);
  return total;
}

Chain chain_of_walk(const SurfaceComplex& s, const std::vector<DirEdge>& walk) {
  Chain x(s.edge_count(), Rat(0));
  for (const DirEdge& d : walk) x[d.edge] += d.sign;
  return x;
}

}  // namespace snlab
