#pragma once

#include <string>

#include "json.hpp"
#include "snlab/ball.hpp"
#include "snlab/cover.hpp"
#include "snlab/homology.hpp"
#include "snlab/prescribe.hpp"
#include "snlab/surface.hpp"

namespace snlab {

// All artifacts use insertion-ordered objects and exact rationals printed
// as strings, so identical inputs dump identical bytes.
using Json = nlohmann::ordered_json;

Json json_rat(const Rat& v);
Json json_vec(const QVec& v);
Json json_chain(const SurfaceComplex& s, const Chain& x);  // label -> coeff
Json json_walk(const SurfaceComplex& s, const std::vector<DirEdge>& walk);

Json info_json(const SurfaceComplex& s, const HomologyBasis& h);
Json homology_json(const SurfaceComplex& s, const HomologyBasis& h);
Json cover_json(const DoubleCover& dc);
Json classification_json(const CurveClassification& c);
Json norm_json(const SurfaceComplex& s, const HomologyBasis& h,
               const QVec& cls, const NormResult& nr,
               const std::vector<std::pair<Rat, Circuit>>& parts);
Json ball_json(const SurfaceComplex& s, const NormBall& ball);
Json flat_json(const NormBall& ball, const Flat& flat);
Json dual_json(const QVec& covector, const Rat& value);
Json certificate_json(const SurfaceComplex& s, const Prescription& p,
                      const Certificate& cert);

// Cover as surface text plus `map` lines tying every cover cell to its
// base cell and deck partner.
std::string serialize_cover(const DoubleCover& dc);

// Picture of a two-dimensional ball, or of the slice of a higher ball by
// a coordinate plane. Exact coordinates appear as labels; the drawing
// itself is rounded.
std::string ball_svg(const NormBall& ball);

}  // namespace snlab
