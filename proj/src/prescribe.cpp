#include "snlab/prescribe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "snlab/error.hpp"
#include "snlab/linalg.hpp"

namespace snlab {

namespace {

bool closed_chain(const SurfaceComplex& s, const Chain& x) {
  const int e_count = s.edge_count();
  std::vector<Rat> bal(s.num_vertices, Rat(0));
  std::vector<int> support;
  for (int e = 0; e < e_count; ++e) {
    if (x[e] == 0) continue;
    support.push_back(e);
    bal[s.head[e]] += x[e];
    bal[s.tail[e]] -= x[e];
  }
  if (support.empty()) return false;
  for (const Rat& b : bal)
    if (b != 0) return false;

  std::map<int, int> comp;
  std::function<int(int)> find = [&](int v) {
    auto it = comp.find(v);
    if (it == comp.end() || it->second == v) return v;
    return it->second = find(it->second);
  };
  for (int e : support) {
    int a = find(s.tail[e]), b = find(s.head[e]);
    comp[a] = a;
    comp[b] = a;
  }
  int root = find(s.tail[support[0]]);
  for (int e : support)
    if (find(s.tail[e]) != root || find(s.head[e]) != root) return false;
  return true;
}

QVec combine_classes(const std::vector<QVec>& cls, const std::vector<int>& eps,
                     int b1) {
  QVec out(b1, Rat(0));
  for (size_t i = 0; i < cls.size(); ++i)
    for (int j = 0; j < b1; ++j) out[j] += Rat(eps[i]) * cls[i][j];
  return out;
}

// One strand end on the circle of edge ends around a vertex.
struct StrandPt {
  int pos;    // rotation index
  int chain;  // which cycle the strand belongs to
  bool in;    // arrival end (the strand runs into the vertex here)
};

using Match = std::vector<std::pair<int, int>>;  // (in pos, out pos)

// Noncrossing perfect matchings of the points, pairing arrivals with
// departures of the same cycle. Points arrive sorted by position; cutting
// the circle anywhere preserves which chord pairs cross.
std::vector<Match> joint_matchings(const std::vector<StrandPt>& pts) {
  if (pts.empty()) return {Match{}};
  std::vector<Match> out;
  const StrandPt& p0 = pts[0];
  for (size_t j = 1; j < pts.size(); ++j) {
    const StrandPt& pj = pts[j];
    if (pj.chain != p0.chain || pj.in == p0.in) continue;
    std::vector<Match> mi =
        joint_matchings({pts.begin() + 1, pts.begin() + j});
    if (mi.empty()) continue;
    std::vector<Match> mo = joint_matchings({pts.begin() + j + 1, pts.end()});
    for (const Match& a : mi)
      for (const Match& b : mo) {
        Match m;
        if (p0.in)
          m.emplace_back(p0.pos, pj.pos);
        else
          m.emplace_back(pj.pos, p0.pos);
        m.insert(m.end(), a.begin(), a.end());
        m.insert(m.end(), b.begin(), b.end());
        out.push_back(std::move(m));
      }
  }
  return out;
}

// Whether the cycles can be drawn simultaneously with no crossing at any
// vertex, each staying a single closed curve. Strands of distinct cycles
// never share an edge end because the supports are edge-disjoint.
bool system_resolvable(const SurfaceComplex& s,
                       const std::vector<Chain>& chains) {
  std::vector<std::vector<StrandPt>> pts(s.num_vertices);
  std::vector<int> support_size(chains.size(), 0);
  for (size_t k = 0; k < chains.size(); ++k) {
    for (int e = 0; e < s.edge_count(); ++e) {
      if (chains[k][e] == 0) continue;
      ++support_size[k];
      bool forward = chains[k][e] > 0;
      for (int end : {kTail, kHead}) {
        auto [v, pos] = s.end_place[2 * e + end];
        bool in = (end == kHead) == forward;
        pts[v].push_back({pos, static_cast<int>(k), in});
      }
    }
  }

  std::vector<int> verts;
  std::vector<std::vector<Match>> options;
  for (int v = 0; v < s.num_vertices; ++v) {
    if (pts[v].empty()) continue;
    std::sort(pts[v].begin(), pts[v].end(),
              [](const StrandPt& a, const StrandPt& b) { return a.pos < b.pos; });
    std::vector<Match> ms = joint_matchings(pts[v]);
    if (ms.empty()) return false;
    verts.push_back(v);
    options.push_back(std::move(ms));
  }

  // next departure end keyed by arrival end id
  std::vector<int> next(2 * s.edge_count(), -1);
  auto end_id = [&](int v, int pos) {
    const EdgeEnd& ee = s.rotation[v][pos];
    return 2 * ee.edge + ee.end;
  };

  std::function<bool(size_t)> pick = [&](size_t idx) -> bool {
    if (idx == verts.size()) {
      for (size_t k = 0; k < chains.size(); ++k) {
        int e0 = -1;
        for (int e = 0; e < s.edge_count(); ++e)
          if (chains[k][e] != 0) { e0 = e; break; }
        int start = 2 * e0 + (chains[k][e0] > 0 ? kTail : kHead);
        int cur = start, count = 0;
        do {
          ++count;
          cur = next[cur ^ 1];
        } while (cur != start && count <= support_size[k]);
        if (cur != start || count != support_size[k]) return false;
      }
      return true;
    }
    int v = verts[idx];
    for (const Match& m : options[idx]) {
      for (const auto& [ip, op] : m) next[end_id(v, ip)] = end_id(v, op);
      if (pick(idx + 1)) return true;
    }
    return false;
  };
  return pick(0);
}

std::vector<int> eps_of_code(long code, int l) {
  std::vector<int> eps(l, 0);
  for (int i = 0; i < l; ++i) {
    int d = static_cast<int>(code % 3);
    code /= 3;
    eps[i] = d == 2 ? -1 : d;
  }
  return eps;
}

}  // namespace

Prescription parse_prescription(const SurfaceComplex& s,
                                const std::string& text) {
  Prescription p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw != "prescribe") continue;
    std::string rtok;
    if (!(ls >> rtok))
      fail(Errc::SyntaxError, "prescribe line without a target length");
    Rat target = parse_rat(rtok);
    Chain x(s.edge_count(), Rat(0));
    int ntok = 0;
    std::string tok;
    while (ls >> tok) {
      int sign = 1;
      if (tok[0] == '-') {
        sign = -1;
        tok.erase(0, 1);
      }
      int e = s.label_id(tok);
      if (e < 0)
        fail(Errc::SyntaxError, "prescribe uses unknown label '" + tok + "'");
      x[e] += sign;
      ++ntok;
    }
    if (ntok == 0) fail(Errc::SyntaxError, "prescribe line lists no edges");
    p.cycles.push_back(std::move(x));
    p.targets.push_back(std::move(target));
  }
  if (p.cycles.empty()) fail(Errc::SyntaxError, "input has no prescribe lines");
  return p;
}

std::string serialize_prescription(const SurfaceComplex& s,
                                   const Prescription& p) {
  std::ostringstream out;
  for (size_t i = 0; i < p.cycles.size(); ++i) {
    out << "prescribe " << format_rat_frac(p.targets[i]);
    for (int e = 0; e < s.edge_count(); ++e) {
      if (p.cycles[i][e] == 0) continue;
      out << ' ' << (p.cycles[i][e] < 0 ? "-" : "") << s.labels[e];
    }
    out << '\n';
  }
  return out.str();
}

void validate_prescription(const SurfaceComplex& s, const HomologyBasis& h,
                           const Prescription& p) {
  if (p.cycles.size() != p.targets.size())
    fail(Errc::Internal, "cycle and target counts differ");
  const int e_count = s.edge_count();
  for (size_t i = 0; i < p.cycles.size(); ++i) {
    if (static_cast<int>(p.cycles[i].size()) != e_count)
      fail(Errc::Internal, "cycle chain has the wrong length");
    if (p.targets[i] <= 0)
      fail(Errc::NonPositiveWeight,
           "target length " + format_rat(p.targets[i]) + " must be positive");
    if (!is_simple_on_surface(s, p.cycles[i]))
      fail(Errc::NotSimple,
           "prescribed cycle " + std::to_string(i) + " does not embed");
  }
  for (size_t i = 0; i < p.cycles.size(); ++i)
    for (size_t j = i + 1; j < p.cycles.size(); ++j)
      for (int e = 0; e < e_count; ++e)
        if (p.cycles[i][e] != 0 && p.cycles[j][e] != 0)
          fail(Errc::NotDisjoint, "cycles " + std::to_string(i) + " and " +
                                      std::to_string(j) + " share edge '" +
                                      s.labels[e] + "'");

  std::vector<QVec> cls;
  for (const Chain& c : p.cycles) cls.push_back(class_of_cycle(s, h, c));
  for (size_t i = 0; i < cls.size(); ++i) {
    bool zero = true;
    for (const Rat& v : cls[i])
      if (v != 0) zero = false;
    if (zero)
      fail(Errc::ProportionalClasses, "prescribed cycle " + std::to_string(i) +
                                          " is null homologous over the "
                                          "rationals");
    for (size_t j = i + 1; j < cls.size(); ++j)
      if (q_rank({cls[i], cls[j]}) != 2)
        fail(Errc::ProportionalClasses, "classes of cycles " +
                                            std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " are proportional");
  }
}

SurfaceComplex normalize_lengths(const SurfaceComplex& s,
                                 const Prescription& p) {
  SurfaceComplex out = s;
  for (size_t i = 0; i < p.cycles.size(); ++i) {
    Rat w = chain_weight(s, p.cycles[i]);
    if (w == 0) fail(Errc::Internal, "prescribed cycle with empty support");
    Rat scale = p.targets[i] / w;
    for (int e = 0; e < s.edge_count(); ++e)
      if (p.cycles[i][e] != 0) out.weights[e] *= scale;
  }
  return out;
}

Certificate penalize_outside(const SurfaceComplex& s, const Prescription& p,
                             int max_rounds) {
  HomologyBasis h = homology_h1(s);
  validate_prescription(s, h, p);
  const int l = static_cast<int>(p.cycles.size());
  std::vector<QVec> cls;
  for (const Chain& c : p.cycles) cls.push_back(class_of_cycle(s, h, c));
  std::vector<bool> inside(s.edge_count(), false);
  for (const Chain& c : p.cycles)
    for (int e = 0; e < s.edge_count(); ++e)
      if (c[e] != 0) inside[e] = true;

  long combos = 1;
  for (int i = 0; i < l; ++i) combos *= 3;

  Rat factor = 1;
  for (int round = 0;; ++round) {
    SurfaceComplex cur = s;
    for (int e = 0; e < s.edge_count(); ++e)
      if (!inside[e]) cur.weights[e] = s.weights[e] * factor;

    Certificate cert;
    cert.rounds = round;
    cert.factor = factor;
    bool ok = true;
    for (long code = 1; code < combos && ok; ++code) {
      std::vector<int> eps = eps_of_code(code, l);
      Rat target = 0;
      for (int i = 0; i < l; ++i)
        if (eps[i] != 0) target += p.targets[i];
      NormResult nr = stable_norm(cur, h, combine_classes(cls, eps, h.free_rank));
      if (nr.value != target) {
        ok = false;
        break;
      }
      cert.entries.push_back({std::move(eps), nr.value, nr.covector});
    }
    if (ok) {
      cert.reweighted = std::move(cur);
      return cert;
    }
    if (round == max_rounds)
      fail(Errc::NoSpanProgress, "no certification after " +
                                     std::to_string(max_rounds) +
                                     " weight doublings");
    factor *= 2;
  }
}

bool verify_prescription(const SurfaceComplex& s, const Prescription& p,
                         long circuit_cap) {
  HomologyBasis h = homology_h1(s);
  validate_prescription(s, h, p);
  std::vector<QVec> cls;
  for (const Chain& c : p.cycles) cls.push_back(class_of_cycle(s, h, c));

  // Canonical basis of the span of the prescribed classes: the nonzero
  // rows of the reduced echelon form. Coordinates in that basis read off
  // at the pivot columns.
  QMat span = {cls.begin(), cls.end()};
  std::vector<int> pivots = q_rref(span);
  const int r = static_cast<int>(pivots.size());

  NormBall ball = unit_ball(s, h, circuit_cap);
  std::vector<QVec> rows;
  for (const QVec& n : ball.facet_normals) {
    QVec row(r, Rat(0));
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < h.free_rank; ++i) row[j] += n[i] * span[j][i];
    rows.push_back(std::move(row));
  }
  std::vector<QVec> slice = polytope_vertices(r, rows);

  std::vector<QVec> pts;
  for (size_t i = 0; i < cls.size(); ++i) {
    QVec c(r);
    for (int j = 0; j < r; ++j) c[j] = cls[i][pivots[j]] / p.targets[i];
    QVec neg = c;
    for (Rat& v : neg) v = -v;
    pts.push_back(std::move(c));
    pts.push_back(std::move(neg));
  }
  Polytope hull = hull_centered(r, pts);
  return slice == hull.vertices;
}

int max_disjoint_systems(const SurfaceComplex& s, int max_edges) {
  const int e_count = s.edge_count();
  if (e_count > max_edges)
    fail(Errc::SearchBudgetExceeded,
         std::to_string(e_count) + " edges, exhaustive search capped at " +
             std::to_string(max_edges));
  HomologyBasis h = homology_h1(s);

  std::vector<Chain> cands;
  std::vector<QVec> cand_cls;
  long total = 1;
  for (int i = 0; i < e_count; ++i) total *= 3;
  for (long code = 1; code < total; ++code) {
    Chain x(e_count, Rat(0));
    long t = code;
    bool canonical = true, seen = false;
    for (int e = 0; e < e_count; ++e) {
      int d = static_cast<int>(t % 3);
      t /= 3;
      if (d == 1)
        x[e] = 1;
      else if (d == 2)
        x[e] = -1;
      if (d != 0 && !seen) {
        seen = true;
        canonical = d == 1;
      }
    }
    if (!canonical || !closed_chain(s, x)) continue;
    if (!is_simple_on_surface(s, x)) continue;
    cand_cls.push_back(class_of_cycle(s, h, x));
    cands.push_back(std::move(x));
  }

  int best = 0;
  std::vector<int> chosen;
  std::function<void(size_t)> grow = [&](size_t from) {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (size_t i = from; i < cands.size(); ++i) {
      bool fits = true;
      for (int j : chosen) {
        bool share = false;
        for (int e = 0; e < e_count; ++e)
          if (cands[i][e] != 0 && cands[j][e] != 0) share = true;
        if (share || q_rank({cand_cls[i], cand_cls[j]}) != 2) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      std::vector<Chain> system;
      for (int j : chosen) system.push_back(cands[j]);
      system.push_back(cands[i]);
      if (!system_resolvable(s, system)) continue;
      chosen.push_back(static_cast<int>(i));
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);

  if (!is_orientable(s) && best > 2 * h.free_rank - 1)
    fail(Errc::Internal, "disjoint system larger than twice the rank allows");
  return best;
}

}  // namespace snlab
