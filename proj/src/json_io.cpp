#include "snlab/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "snlab/error.hpp"

namespace snlab {

namespace {

Json json_mat(const QMat& m) {
  Json out = Json::array();
  for (const QVec& row : m) out.push_back(json_vec(row));
  return out;
}

Json json_classes(const std::vector<QVec>& classes) {
  Json out = Json::array();
  for (const QVec& c : classes) out.push_back(json_vec(c));
  return out;
}

Json surface_summary(const SurfaceComplex& s) {
  Json j;
  j["name"] = s.name;
  j["vertices"] = s.num_vertices;
  j["edges"] = s.edge_count();
  j["faces"] = s.face_count();
  j["euler"] = s.euler_characteristic();
  return j;
}

Rat walk_length(const SurfaceComplex& s, const std::vector<DirEdge>& walk) {
  Rat w = 0;
  for (const DirEdge& d : walk) w += s.weights[d.edge];
  return w;
}

}  // namespace

Json json_rat(const Rat& v) { return format_rat(v); }

Json json_vec(const QVec& v) {
  Json out = Json::array();
  for (const Rat& x : v) out.push_back(format_rat(x));
  return out;
}

Json json_chain(const SurfaceComplex& s, const Chain& x) {
  Json out = Json::object();
  for (int e = 0; e < s.edge_count(); ++e)
    if (x[e] != 0) out[s.labels[e]] = format_rat(x[e]);
  return out;
}

Json json_walk(const SurfaceComplex& s, const std::vector<DirEdge>& walk) {
  Json out = Json::array();
  for (const DirEdge& d : walk)
    out.push_back((d.sign < 0 ? "-" : "") + s.labels[d.edge]);
  return out;
}

Json info_json(const SurfaceComplex& s, const HomologyBasis& h) {
  Json j = surface_summary(s);
  j["orientable"] = is_orientable(s);
  j["rank"] = h.free_rank;
  Json tor = Json::array();
  for (const Int& d : h.torsion) tor.push_back(d.str());
  j["torsion"] = tor;
  Json w = Json::object();
  for (int e = 0; e < s.edge_count(); ++e)
    w[s.labels[e]] = format_rat(s.weights[e]);
  j["weights"] = w;
  return j;
}

Json homology_json(const SurfaceComplex& s, const HomologyBasis& h) {
  Json j;
  j["rank"] = h.free_rank;
  Json tor = Json::array();
  for (const Int& d : h.torsion) tor.push_back(d.str());
  j["torsion"] = tor;
  Json basis = Json::array();
  for (const Chain& c : h.basis_cycles) basis.push_back(json_chain(s, c));
  j["basis"] = basis;
  j["coordinate_rows"] = json_mat(h.coord_rows);
  return j;
}

Json cover_json(const DoubleCover& dc) {
  Json j;
  j["base"] = surface_summary(dc.base);
  j["base"]["rank"] = dc.h_base.free_rank;
  j["total"] = surface_summary(dc.total);
  j["total"]["rank"] = dc.h_total.free_rank;
  j["orientable_total"] = is_orientable(dc.total);
  j["i_star"] = json_mat(dc.i_star);
  j["pi_star"] = json_mat(dc.pi_star);
  j["e1_dim"] = static_cast<int>(dc.e1_basis.size());
  j["em1_dim"] = static_cast<int>(dc.em1_basis.size());
  j["e1_basis"] = json_classes(dc.e1_basis);
  j["em1_basis"] = json_classes(dc.em1_basis);
  return j;
}

Json classification_json(const CurveClassification& c) {
  Json j;
  j["components"] = c.components;
  j["sidedness"] = c.one_sided ? "one-sided" : "two-sided";
  j["type"] = c.type;
  j["lift_classes"] = json_classes(c.lift_classes);
  return j;
}

Json norm_json(const SurfaceComplex& s, const HomologyBasis& h,
               const QVec& cls, const NormResult& nr,
               const std::vector<std::pair<Rat, Circuit>>& parts) {
  (void)h;
  Json j;
  j["class"] = json_vec(cls);
  j["value"] = format_rat(nr.value);
  j["minimizer"] = json_chain(s, nr.minimizer);
  j["covector"] = json_vec(nr.covector);
  Json cycles = Json::array();
  for (const auto& [lambda, circuit] : parts) {
    Json c;
    c["coefficient"] = format_rat(lambda);
    c["walk"] = json_walk(s, circuit.walk);
    c["length"] = format_rat(walk_length(s, circuit.walk));
    cycles.push_back(std::move(c));
  }
  j["cycles"] = cycles;
  return j;
}

Json ball_json(const SurfaceComplex& s, const NormBall& ball) {
  Json j;
  j["dim"] = ball.dim;
  Json verts = Json::array();
  for (const QVec& v : ball.vertices) verts.push_back(json_vec(v));
  j["vertices"] = verts;
  Json facets = Json::array();
  for (const QVec& n : ball.facet_normals) facets.push_back(json_vec(n));
  j["facets"] = facets;
  j["incidence"] = ball.incidence;
  Json prov = Json::array();
  for (const Circuit& c : ball.vertex_circuit) {
    Json p;
    p["circuit"] = json_walk(s, c.walk);
    p["length"] = format_rat(walk_length(s, c.walk));
    prov.push_back(std::move(p));
  }
  j["provenance"] = prov;
  return j;
}

Json flat_json(const NormBall& ball, const Flat& flat) {
  Json j;
  j["dim"] = flat.dim;
  j["covector"] = json_vec(flat.covector);
  j["vertex_ids"] = flat.vertex_ids;
  Json verts = Json::array();
  for (int id : flat.vertex_ids) verts.push_back(json_vec(ball.vertices[id]));
  j["vertices"] = verts;
  return j;
}

Json dual_json(const QVec& covector, const Rat& value) {
  Json j;
  j["covector"] = json_vec(covector);
  j["value"] = format_rat(value);
  return j;
}

Json certificate_json(const SurfaceComplex& s, const Prescription& p,
                      const Certificate& cert) {
  Json j;
  Json cycles = Json::array();
  for (const Chain& c : p.cycles) cycles.push_back(json_chain(s, c));
  j["cycles"] = cycles;
  Json targets = Json::array();
  for (const Rat& r : p.targets) targets.push_back(format_rat(r));
  j["targets"] = targets;
  j["rounds"] = cert.rounds;
  j["factor"] = format_rat(cert.factor);
  Json w = Json::object();
  for (int e = 0; e < cert.reweighted.edge_count(); ++e)
    w[cert.reweighted.labels[e]] = format_rat(cert.reweighted.weights[e]);
  j["weights"] = w;
  Json entries = Json::array();
  for (const CertificateEntry& en : cert.entries) {
    Json e;
    e["eps"] = en.eps;
    e["value"] = format_rat(en.value);
    e["covector"] = json_vec(en.covector);
    entries.push_back(std::move(e));
  }
  j["entries"] = entries;
  return j;
}

std::string serialize_cover(const DoubleCover& dc) {
  std::ostringstream out;
  out << serialize_surface(dc.total);
  for (int e = 0; e < dc.total.edge_count(); ++e)
    out << "map edge " << dc.total.labels[e] << ' '
        << dc.base.labels[dc.edge_base[e]] << ' '
        << dc.total.labels[dc.edge_partner[e]] << '\n';
  for (int f = 0; f < dc.total.face_count(); ++f)
    out << "map face " << f << ' ' << dc.face_base[f] << ' '
        << dc.face_partner[f] << '\n';
  for (int v = 0; v < dc.total.num_vertices; ++v)
    out << "map vertex " << v << ' ' << dc.vertex_base[v] << ' '
        << dc.vertex_partner[v] << '\n';
  return out.str();
}

namespace {

// Counterclockwise order around the origin, exact: upper half plane first
// within it by cross product.
bool ccw_less(const QVec& a, const QVec& b) {
  auto half = [](const QVec& v) {
    return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
  };
  if (half(a) != half(b)) return half(a) < half(b);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string ball_svg(const NormBall& ball) {
  if (ball.dim < 2)
    fail(Errc::Internal, "no picture of a ball of dimension below two");

  std::vector<QVec> verts;
  if (ball.dim == 2) {
    verts = ball.vertices;
  } else {
    // Slice by the plane of the first two coordinates.
    std::vector<QVec> rows;
    for (const QVec& n : ball.facet_normals) rows.push_back({n[0], n[1]});
    verts = polytope_vertices(2, rows);
  }
  std::sort(verts.begin(), verts.end(), ccw_less);

  double maxabs = 0;
  for (const QVec& v : verts)
    for (const Rat& c : v)
      maxabs = std::max(maxabs, std::abs(static_cast<double>(c)));
  if (maxabs == 0) maxabs = 1;
  const double scale = 200.0 / maxabs, cx = 260, cy = 260;
  auto px = [&](const Rat& x) { return cx + static_cast<double>(x) * scale; };
  auto py = [&](const Rat& y) { return cy - static_cast<double>(y) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" "
         "height=\"520\" viewBox=\"0 0 520 520\">\n";
  out << "  <line x1=\"10\" y1=\"260\" x2=\"510\" y2=\"260\" "
         "stroke=\"#bbb\"/>\n";
  out << "  <line x1=\"260\" y1=\"10\" x2=\"260\" y2=\"510\" "
         "stroke=\"#bbb\"/>\n";
  out << "  <polygon points=\"";
  for (size_t i = 0; i < verts.size(); ++i) {
    if (i) out << ' ';
    out << fmt3(px(verts[i][0])) << ',' << fmt3(py(verts[i][1]));
  }
  out << "\" fill=\"#9ec5e8\" fill-opacity=\"0.5\" stroke=\"#1f5fa8\" "
         "stroke-width=\"2\"/>\n";
  for (const QVec& v : verts) {
    out << "  <circle cx=\"" << fmt3(px(v[0])) << "\" cy=\"" << fmt3(py(v[1]))
        << "\" r=\"4\" fill=\"#1f5fa8\"/>\n";
    out << "  <text x=\"" << fmt3(px(v[0]) + 7) << "\" y=\""
        << fmt3(py(v[1]) - 7) << "\" font-family=\"monospace\" "
        << "font-size=\"12\">(" << format_rat(v[0]) << ", " << format_rat(v[1])
        << ")</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace snlab
