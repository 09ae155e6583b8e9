#include "snlab/pairing.hpp"

#include <cstdlib>
#include <vector>

#include "snlab/error.hpp"
#include "snlab/linalg.hpp"

namespace snlab {

namespace {

std::vector<long> to_int_chain(const Chain& x) {
  std::vector<long> out(x.size());
  for (size_t e = 0; e < x.size(); ++e) {
    if (rat_den(x[e]) != 1)
      fail(Errc::Internal, "intersection counting needs an integer cycle");
    out[e] = static_cast<long>(rat_num(x[e]));
  }
  return out;
}

// Signed crossings of two integer cycles drawn as parallel strand bundles:
// |x_e| strands of the first cycle and |y_e| of the second run along every
// edge without crossing, the first bundle on one side of the band. All
// crossings happen inside vertex disks, between the chords that reconnect
// incoming strands to outgoing ones. Which incoming strand continues as
// which outgoing strand is irrelevant to the class, so a first-to-first
// matching in circle order is used.
//
// For coherently oriented boundary words the link walk lists every vertex
// circle with one uniform handedness, so one crossing rule applied
// everywhere is off from the true pairing by at most one global sign; the
// calibration below fixes that sign once, on the torus.
Int raw_crossings(const SurfaceComplex& s, const std::vector<long>& x,
                  const std::vector<long>& y) {
  Int total(0);
  for (int v = 0; v < s.num_vertices; ++v) {
    // Points on the vertex circle, in rotation order. Head ends carry the
    // first cycle's block first; tail ends mirror the band's cross
    // section, so the blocks swap.
    struct Pt {
      int cycle;
      bool incoming;
    };
    std::vector<Pt> circle;
    for (const EdgeEnd& end : s.rotation[v]) {
      long xe = x[end.edge];
      long ye = y[end.edge];
      bool x_in = end.end == kHead ? xe > 0 : xe < 0;
      bool y_in = end.end == kHead ? ye > 0 : ye < 0;
      long xa = std::labs(xe), ya = std::labs(ye);
      if (end.end == kHead) {
        for (long i = 0; i < xa; ++i) circle.push_back({0, x_in});
        for (long i = 0; i < ya; ++i) circle.push_back({1, y_in});
      } else {
        for (long i = 0; i < ya; ++i) circle.push_back({1, y_in});
        for (long i = 0; i < xa; ++i) circle.push_back({0, x_in});
      }
    }
    const int n = static_cast<int>(circle.size());
    std::vector<std::pair<int, int>> chords[2];
    for (int c = 0; c < 2; ++c) {
      std::vector<int> in, out;
      for (int i = 0; i < n; ++i) {
        if (circle[i].cycle != c) continue;
        (circle[i].incoming ? in : out).push_back(i);
      }
      if (in.size() != out.size())
        fail(Errc::Internal, "strand flow not conserved at a vertex");
      for (size_t k = 0; k < in.size(); ++k) chords[c].emplace_back(in[k], out[k]);
    }
    auto in_arc = [n](int p, int from, int to) {
      // Walking forward from 'from', is p strictly before 'to'?
      int len = (to - from + n) % n;
      int off = (p - from + n) % n;
      return off > 0 && off < len;
    };
    for (const auto& [a, c] : chords[0]) {
      for (const auto& [b, d] : chords[1]) {
        if (in_arc(b, a, c) && in_arc(d, c, a))
          total += 1;
        else if (in_arc(b, c, a) && in_arc(d, a, c))
          total -= 1;
      }
    }
  }
  return total;
}

Int signed_crossings(const SurfaceComplex& oriented, const Chain& x,
                     const Chain& y);

// One global sign makes the crossing rule agree with the convention that
// the torus pairs its two basis loops to +1.
int calibration() {
  static const int k = [] {
    SurfaceComplex t = parse_surface("surface square-torus\nface a b -a -b\n");
    HomologyBasis h = homology_h1(t);
    if (h.free_rank != 2) fail(Errc::Internal, "torus rank is not two");
    SurfaceComplex to = reoriented(t, consistent_orientation(t));
    Int raw = raw_crossings(to, to_int_chain(h.basis_cycles[0]),
                            to_int_chain(h.basis_cycles[1]));
    if (raw != 1 && raw != -1)
      fail(Errc::Internal, "torus basis loops cross " + format_rat(Rat(raw)) +
                               " times");
    return raw > 0 ? 1 : -1;
  }();
  return k;
}

Int signed_crossings(const SurfaceComplex& oriented, const Chain& x,
                     const Chain& y) {
  return Int(calibration()) * raw_crossings(oriented, to_int_chain(x), to_int_chain(y));
}

}  // namespace

IntersectionForm intersection_form(const SurfaceComplex& s,
                                   const HomologyBasis& h) {
  SurfaceComplex oriented = reoriented(s, consistent_orientation(s));
  const int b1 = h.free_rank;
  IntersectionForm f;
  f.m.assign(b1, ZVec(b1, Int(0)));
  for (int i = 0; i < b1; ++i) {
    if (signed_crossings(oriented, h.basis_cycles[i], h.basis_cycles[i]) != 0)
      fail(Errc::Internal, "cycle crosses itself algebraically");
    for (int j = i + 1; j < b1; ++j) {
      Int c = signed_crossings(oriented, h.basis_cycles[i], h.basis_cycles[j]);
      f.m[i][j] = c;
      f.m[j][i] = -c;
    }
  }
  return f;
}

Rat int_number(const IntersectionForm& f, const QVec& a, const QVec& b) {
  const int n = static_cast<int>(f.m.size());
  Rat out(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out += a[i] * Rat(f.m[i][j]) * b[j];
  return out;
}

Rat int_number(const SurfaceComplex& s, const HomologyBasis& h,
               const IntersectionForm& f, const Chain& x, const Chain& y) {
  return int_number(f, class_of_cycle(s, h, x), class_of_cycle(s, h, y));
}

namespace {

bool isotropic_half(const IntersectionForm& f,
                    const std::vector<QVec>& classes) {
  const int b1 = static_cast<int>(f.m.size());
  if (b1 % 2 != 0) return false;
  for (const QVec& a : classes)
    for (const QVec& b : classes)
      if (int_number(f, a, b) != 0) return false;
  QMat m;
  for (const QVec& c : classes) m.push_back(c);
  return q_rank(m) == b1 / 2;
}

}  // namespace

bool check_lagrangian(const DoubleCover& dc) {
  IntersectionForm f = intersection_form(dc.total, dc.h_total);
  return isotropic_half(f, dc.e1_basis) && isotropic_half(f, dc.em1_basis);
}

}  // namespace snlab
