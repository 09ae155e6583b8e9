#include "snlab/cover.hpp"

#include <algorithm>

#include "snlab/error.hpp"
#include "snlab/linalg.hpp"

namespace snlab {

namespace {

// occurrence_index[f][i]: which of the edge's two occurrences sits at
// face f, position i.
std::vector<std::vector<int>> occurrence_index(const SurfaceComplex& s) {
  std::vector<std::vector<int>> idx(s.face_count());
  for (int f = 0; f < s.face_count(); ++f) idx[f].assign(s.faces[f].size(), -1);
  for (int e = 0; e < s.edge_count(); ++e)
    for (int j = 0; j < 2; ++j) {
      const Occurrence& o = s.occurrences[e][j];
      idx[o.face][o.pos] = j;
    }
  return idx;
}

// Which cover copy of a base edge serves each occurrence in each face
// copy. Opposite exponents glue without a flip, so both plus faces share
// copy 0; equal exponents cross over to the other sheet. Either way each
// cover edge gets one occurrence of each sign, which is exactly what
// makes the cover orientable as written.
std::vector<std::vector<FaceSide>> cover_words(const SurfaceComplex& s) {
  auto occ_idx = occurrence_index(s);
  // copy_for[edge][occurrence][face_copy] in {0,1}.
  std::vector<std::array<std::array<int, 2>, 2>> copy_for(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    bool opposite = s.occurrences[e][0].sign != s.occurrences[e][1].sign;
    // First occurrence: plus face uses copy 0, minus face copy 1.
    copy_for[e][0] = {0, 1};
    // Second occurrence follows the gluing type.
    copy_for[e][1] = opposite ? std::array<int, 2>{0, 1}
                              : std::array<int, 2>{1, 0};
  }
  std::vector<std::vector<FaceSide>> words(2 * s.face_count());
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& base_word = s.faces[f];
    const int len = static_cast<int>(base_word.size());
    std::vector<FaceSide> plus(len), minus(len);
    for (int i = 0; i < len; ++i) {
      int e = base_word[i].edge;
      int j = occ_idx[f][i];
      plus[i] = FaceSide{2 * e + copy_for[e][j][0], base_word[i].sign};
      minus[len - 1 - i] = FaceSide{2 * e + copy_for[e][j][1], -base_word[i].sign};
    }
    words[2 * f] = std::move(plus);
    words[2 * f + 1] = std::move(minus);
  }
  return words;
}

}  // namespace

Chain project_chain(const DoubleCover& dc, const Chain& cover_chain) {
  Chain out(dc.base.edge_count(), Rat(0));
  for (int e = 0; e < dc.total.edge_count(); ++e)
    out[dc.edge_base[e]] += cover_chain[e];
  return out;
}

Chain deck_chain(const DoubleCover& dc, const Chain& cover_chain) {
  Chain out(dc.total.edge_count(), Rat(0));
  for (int e = 0; e < dc.total.edge_count(); ++e)
    out[dc.edge_partner[e]] = cover_chain[e];
  return out;
}

QVec pushforward(const DoubleCover& dc, const QVec& cover_class) {
  return q_apply(dc.pi_star, cover_class);
}

DoubleCover orientation_cover(const SurfaceComplex& s) {
  if (is_orientable(s))
    fail(Errc::BaseOrientable,
         "surface '" + s.name + "' is orientable, its orientation cover splits");

  DoubleCover dc;
  dc.base = s;

  std::vector<std::string> labels(2 * s.edge_count());
  std::vector<Rat> weights(2 * s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    labels[2 * e] = s.labels[e] + ".0";
    labels[2 * e + 1] = s.labels[e] + ".1";
    weights[2 * e] = weights[2 * e + 1] = s.weights[e];
  }
  dc.total = build_complex(s.name + ".cover", std::move(labels),
                           std::move(weights), cover_words(s));

  dc.edge_base.resize(dc.total.edge_count());
  dc.edge_partner.resize(dc.total.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    dc.edge_base[2 * e] = dc.edge_base[2 * e + 1] = e;
    dc.edge_partner[2 * e] = 2 * e + 1;
    dc.edge_partner[2 * e + 1] = 2 * e;
  }
  dc.face_base.resize(dc.total.face_count());
  dc.face_partner.resize(dc.total.face_count());
  for (int f = 0; f < s.face_count(); ++f) {
    dc.face_base[2 * f] = dc.face_base[2 * f + 1] = f;
    dc.face_partner[2 * f] = 2 * f + 1;
    dc.face_partner[2 * f + 1] = 2 * f;
  }

  // Vertex maps are forced by the edge maps; check they are well defined,
  // which is the covering property at the vertices.
  dc.vertex_base.assign(dc.total.num_vertices, -1);
  dc.vertex_partner.assign(dc.total.num_vertices, -1);
  for (int e = 0; e < dc.total.edge_count(); ++e) {
    for (int end = 0; end < 2; ++end) {
      int v = dc.total.end_vertex(e, end);
      int bv = dc.base.end_vertex(dc.edge_base[e], end);
      if (dc.vertex_base[v] == -1)
        dc.vertex_base[v] = bv;
      else if (dc.vertex_base[v] != bv)
        fail(Errc::Internal, "cover vertex projects to two base vertices");
      int pv = dc.total.end_vertex(dc.edge_partner[e], end);
      if (dc.vertex_partner[v] == -1)
        dc.vertex_partner[v] = pv;
      else if (dc.vertex_partner[v] != pv)
        fail(Errc::Internal, "deck involution tears a vertex");
    }
  }
  for (int v = 0; v < dc.total.num_vertices; ++v) {
    if (dc.vertex_partner[v] == v)
      fail(Errc::Internal, "deck involution fixes a vertex");
    if (dc.vertex_partner[dc.vertex_partner[v]] != v)
      fail(Errc::Internal, "deck involution is not an involution on vertices");
  }

  // The cover must come out orientable with the identity flip assignment.
  std::vector<int> flips = consistent_orientation(dc.total);
  for (int flip : flips)
    if (flip != 0) fail(Errc::Internal, "cover words are not coherently oriented");

  dc.h_base = homology_h1(dc.base);
  dc.h_total = homology_h1(dc.total);

  const int bt = dc.h_total.free_rank;
  const int bb = dc.h_base.free_rank;
  dc.i_star.assign(bt, QVec(bt, Rat(0)));
  dc.pi_star.assign(bb, QVec(bt, Rat(0)));
  for (int j = 0; j < bt; ++j) {
    QVec ic = class_of_cycle(dc.total, dc.h_total,
                             deck_chain(dc, dc.h_total.basis_cycles[j]));
    QVec pc = class_of_cycle(dc.base, dc.h_base,
                             project_chain(dc, dc.h_total.basis_cycles[j]));
    for (int i = 0; i < bt; ++i) dc.i_star[i][j] = ic[i];
    for (int i = 0; i < bb; ++i) dc.pi_star[i][j] = pc[i];
  }
  QMat sq = q_mul(dc.i_star, dc.i_star);
  if (sq != q_identity(bt))
    fail(Errc::Internal, "deck action does not square to the identity");
  if (q_mul(dc.pi_star, dc.i_star) != dc.pi_star)
    fail(Errc::Internal, "projection does not absorb the deck action");

  QMat plus = dc.i_star, minus = dc.i_star;
  for (int i = 0; i < bt; ++i) {
    plus[i][i] -= 1;
    minus[i][i] += 1;
  }
  dc.e1_basis = q_kernel(plus);
  dc.em1_basis = q_kernel(minus);
  if (static_cast<int>(dc.e1_basis.size() + dc.em1_basis.size()) != bt)
    fail(Errc::Internal, "eigenspaces do not fill cover homology");
  return dc;
}

Lift lift_cycle(const DoubleCover& dc, const Chain& gamma) {
  std::vector<DirEdge> walk = closed_walk_of(dc.base, gamma);
  int v0 = walk[0].sign > 0 ? dc.base.tail[walk[0].edge]
                            : dc.base.head[walk[0].edge];
  int start = -1;
  for (int v = 0; v < dc.total.num_vertices; ++v)
    if (dc.vertex_base[v] == v0) { start = v; break; }
  if (start < 0) fail(Errc::Internal, "base vertex with empty fiber");

  auto lift_walk = [&dc](const std::vector<DirEdge>& w, int from) {
    Chain x(dc.total.edge_count(), Rat(0));
    int at = from;
    for (const DirEdge& d : w) {
      int l0 = 2 * d.edge, l1 = l0 + 1;
      int f0 = d.sign > 0 ? dc.total.tail[l0] : dc.total.head[l0];
      int f1 = d.sign > 0 ? dc.total.tail[l1] : dc.total.head[l1];
      if (f0 == f1) fail(Errc::Internal, "edge lifts leave one vertex");
      int use = f0 == at ? l0 : f1 == at ? l1 : -1;
      if (use < 0) fail(Errc::Internal, "walk lift lost its vertex");
      x[use] += d.sign;
      at = d.sign > 0 ? dc.total.head[use] : dc.total.tail[use];
    }
    return std::make_pair(x, at);
  };

  auto [first, at] = lift_walk(walk, start);
  Lift out;
  if (at == start) {
    out.components = 2;
    out.chains = {first, deck_chain(dc, first)};
    return out;
  }
  auto [second, closing] = lift_walk(walk, at);
  if (closing != start) fail(Errc::Internal, "lift fails to close after two passes");
  Chain sum = first;
  for (size_t e = 0; e < sum.size(); ++e) sum[e] += second[e];
  out.components = 1;
  out.chains = {std::move(sum)};
  return out;
}

CurveClassification classify_curve(const DoubleCover& dc, const Chain& gamma) {
  if (!is_simple_on_surface(dc.base, gamma))
    fail(Errc::NotSimple, "curve does not embed without self crossings");
  Lift lifted = lift_cycle(dc, gamma);
  CurveClassification c;
  c.components = lifted.components;
  c.one_sided = lifted.components == 1;
  for (const Chain& chain : lifted.chains)
    c.lift_classes.push_back(class_of_cycle(dc.total, dc.h_total, chain));
  c.type = (c.components == 1 || c.lift_classes[0] == c.lift_classes[1]) ? 1 : 2;
  return c;
}

CurveClassification classify_curve(const SurfaceComplex& s,
                                   const Chain& gamma) {
  return classify_curve(orientation_cover(s), gamma);
}

}  // namespace snlab
