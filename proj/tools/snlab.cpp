#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snlab/ball.hpp"
#include "snlab/cover.hpp"
#include "snlab/error.hpp"
#include "snlab/homology.hpp"
#include "snlab/json_io.hpp"
#include "snlab/pairing.hpp"
#include "snlab/prescribe.hpp"
#include "snlab/surface.hpp"

using namespace snlab;

namespace {

// Input problems the shell caused, not the math: exit code 2.
struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError{"cannot write '" + path + "'"};
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

QVec parse_class(const std::string& text, int rank) {
  QVec out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_rat(item));
  if (static_cast<int>(out.size()) != rank)
    fail(Errc::SyntaxError, "class has " + std::to_string(out.size()) +
                                " coordinates, homology rank is " +
                                std::to_string(rank));
  return out;
}

Chain parse_cycle(const SurfaceComplex& s, const std::string& text) {
  Chain x(s.edge_count(), Rat(0));
  std::string tok;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    int sign = 1;
    if (tok[0] == '-') {
      sign = -1;
      tok.erase(0, 1);
    }
    int e = s.label_id(tok);
    if (e < 0) fail(Errc::SyntaxError, "unknown edge label '" + tok + "'");
    x[e] += sign;
    any = true;
  }
  if (!any) fail(Errc::SyntaxError, "empty cycle");
  return x;
}

std::string chain_text(const SurfaceComplex& s, const Chain& x) {
  std::ostringstream out;
  bool first = true;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (x[e] == 0) continue;
    if (!first) out << " ";
    if (x[e] == 1)
      out << (first ? "" : "+ ") << s.labels[e];
    else if (x[e] == -1)
      out << "- " << s.labels[e];
    else
      out << (x[e] < 0 ? "- " : (first ? "" : "+ "))
          << format_rat(rat_abs(x[e])) << "*" << s.labels[e];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string vec_text(const QVec& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i)
    out << (i ? ", " : "") << format_rat(v[i]);
  out << ")";
  return out.str();
}

NormBall require_ball(const SurfaceComplex& s, const HomologyBasis& h,
                      long cap) {
  if (h.free_rank == 0)
    fail(Errc::SyntaxError,
         "first homology has rank zero, there is no unit ball");
  return unit_ball(s, h, cap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact stable norms on weighted surface complexes"};
  app.require_subcommand(1);

  std::string in_path, out_path, svg_path, cls_text, cycle_text;
  bool as_json = false;
  long cap_circuits = 1000000;
  int max_escalations = 64;

  auto add_common = [&](CLI::App* cmd, bool with_class = false) {
    cmd->add_option("input", in_path, "surface file")->required();
    cmd->add_flag("--json", as_json, "machine readable output");
    cmd->add_option("-o,--out", out_path, "write output here instead of stdout");
    if (with_class)
      cmd->add_option("--class", cls_text, "homology class, comma separated rationals")
          ->required();
  };

  CLI::App* c_info = app.add_subcommand("info", "complex summary");
  add_common(c_info);
  CLI::App* c_hom = app.add_subcommand("homology", "first homology");
  add_common(c_hom);
  CLI::App* c_cover = app.add_subcommand("cover", "orientation double cover");
  add_common(c_cover);
  CLI::App* c_classify =
      app.add_subcommand("classify", "sidedness and lift type of a curve");
  add_common(c_classify);
  c_classify
      ->add_option("--cycle", cycle_text, "curve as comma separated signed labels")
      ->required();
  CLI::App* c_norm = app.add_subcommand("norm", "stable norm of a class");
  add_common(c_norm, true);
  CLI::App* c_ball = app.add_subcommand("ball", "unit ball of the stable norm");
  add_common(c_ball);
  c_ball->add_option("--cap-circuits", cap_circuits, "circuit enumeration cap");
  c_ball->add_option("--svg", svg_path, "also draw the ball (or a 2d slice)");
  CLI::App* c_flat = app.add_subcommand("flat", "face of the unit sphere at a class");
  add_common(c_flat, true);
  c_flat->add_option("--cap-circuits", cap_circuits, "circuit enumeration cap");
  CLI::App* c_dual = app.add_subcommand("dual", "dual norm of a covector");
  add_common(c_dual, true);
  CLI::App* c_construct =
      app.add_subcommand("construct", "reweight so prescribed cycles span a ball face");
  add_common(c_construct);
  c_construct->add_option("--cap-circuits", cap_circuits, "circuit enumeration cap");
  c_construct->add_option("--max-escalations", max_escalations,
                          "outside weight doublings to try");
  CLI::App* c_verify =
      app.add_subcommand("verify", "check a prescription against the ball");
  add_common(c_verify);
  c_verify->add_option("--cap-circuits", cap_circuits, "circuit enumeration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string text = read_file(in_path);
    SurfaceComplex s = parse_surface(text);
    HomologyBasis h = homology_h1(s);

    if (app.got_subcommand(c_info)) {
      if (as_json) {
        emit(out_path, dump(info_json(s, h)));
      } else {
        std::ostringstream out;
        out << "surface " << s.name << ": " << s.num_vertices << " vertices, "
            << s.edge_count() << " edges, " << s.face_count() << " faces\n";
        out << "euler " << s.euler_characteristic() << ", "
            << (is_orientable(s) ? "orientable" : "non-orientable") << "\n";
        out << "homology rank " << h.free_rank << ", torsion [";
        for (size_t i = 0; i < h.torsion.size(); ++i)
          out << (i ? ", " : "") << h.torsion[i].str();
        out << "]\n";
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_hom)) {
      if (as_json) {
        emit(out_path, dump(homology_json(s, h)));
      } else {
        std::ostringstream out;
        out << "rank " << h.free_rank << ", torsion [";
        for (size_t i = 0; i < h.torsion.size(); ++i)
          out << (i ? ", " : "") << h.torsion[i].str();
        out << "]\n";
        for (int i = 0; i < h.free_rank; ++i)
          out << "h" << i << " = " << chain_text(s, h.basis_cycles[i]) << "\n";
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_cover)) {
      DoubleCover dc = orientation_cover(s);
      emit(out_path, as_json ? dump(cover_json(dc)) : serialize_cover(dc));
    } else if (app.got_subcommand(c_classify)) {
      DoubleCover dc = orientation_cover(s);
      CurveClassification c = classify_curve(dc, parse_cycle(s, cycle_text));
      if (as_json) {
        emit(out_path, dump(classification_json(c)));
      } else {
        std::ostringstream out;
        out << (c.one_sided ? "one-sided" : "two-sided") << ", type " << c.type
            << ", " << c.components
            << (c.components == 1 ? " lift component\n" : " lift components\n");
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_norm)) {
      QVec cls = parse_class(cls_text, h.free_rank);
      NormResult nr = stable_norm(s, h, cls);
      auto parts = minimizing_cycles(s, h, cls);
      if (as_json) {
        emit(out_path, dump(norm_json(s, h, cls, nr, parts)));
      } else {
        std::ostringstream out;
        out << format_rat(nr.value) << "\n";
        for (const auto& [lambda, circuit] : parts) {
          out << "  " << format_rat(lambda) << " x";
          for (const DirEdge& d : circuit.walk)
            out << ' ' << (d.sign < 0 ? "-" : "") << s.labels[d.edge];
          out << "\n";
        }
        out << "covector " << vec_text(nr.covector) << "\n";
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_ball)) {
      NormBall ball = require_ball(s, h, cap_circuits);
      if (!svg_path.empty()) {
        if (ball.dim < 2)
          fail(Errc::SyntaxError,
               "ball has dimension " + std::to_string(ball.dim) +
                   ", pictures need at least two");
        write_file(svg_path, ball_svg(ball));
      }
      if (as_json) {
        emit(out_path, dump(ball_json(s, ball)));
      } else {
        std::ostringstream out;
        out << "dim " << ball.dim << ", " << ball.vertices.size()
            << " vertices, " << ball.facet_normals.size() << " facets\n";
        for (const QVec& v : ball.vertices) out << "  " << vec_text(v) << "\n";
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_flat)) {
      QVec cls = parse_class(cls_text, h.free_rank);
      NormBall ball = require_ball(s, h, cap_circuits);
      Flat flat = flat_of(ball, cls);
      if (as_json) {
        emit(out_path, dump(flat_json(ball, flat)));
      } else {
        std::ostringstream out;
        out << "dim " << flat.dim << ", covector " << vec_text(flat.covector)
            << "\n";
        for (int id : flat.vertex_ids)
          out << "  " << vec_text(ball.vertices[id]) << "\n";
        emit(out_path, out.str());
      }
    } else if (app.got_subcommand(c_dual)) {
      QVec cov = parse_class(cls_text, h.free_rank);
      NormBall ball = require_ball(s, h, cap_circuits);
      Rat value = dual_norm(ball, cov);
      emit(out_path, as_json ? dump(dual_json(cov, value))
                             : format_rat(value) + "\n");
    } else if (app.got_subcommand(c_construct)) {
      Prescription p = parse_prescription(s, text);
      validate_prescription(s, h, p);
      SurfaceComplex normalized = normalize_lengths(s, p);
      Certificate cert = penalize_outside(normalized, p, max_escalations);
      bool good = verify_prescription(cert.reweighted, p, cap_circuits);
      if (!good)
        fail(Errc::Internal, "certified surface fails ball verification");
      std::string srf =
          serialize_surface(cert.reweighted) + serialize_prescription(s, p);
      if (!out_path.empty()) write_file(out_path, srf);
      if (as_json) {
        Json j = certificate_json(s, p, cert);
        j["verified"] = true;
        std::cout << dump(j);
      } else {
        if (out_path.empty()) std::cout << srf;
        std::cout << "certified after " << cert.rounds
                  << " doublings, outside factor " << format_rat(cert.factor)
                  << ", verified\n";
      }
    } else if (app.got_subcommand(c_verify)) {
      Prescription p = parse_prescription(s, text);
      bool good = verify_prescription(s, p, cap_circuits);
      if (as_json) {
        Json j;
        j["verified"] = good;
        emit(out_path, dump(j));
      } else {
        emit(out_path, std::string(good ? "true" : "false") + "\n");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
