#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snlab/chain.hpp"
#include "snlab/rational.hpp"

namespace snlab {

// Edge endpoints. An edge's reference direction runs tail -> head.
inline constexpr int kTail = 0;
inline constexpr int kHead = 1;

// One geometric endpoint of one edge. A self-loop contributes both of its
// ends, as distinct points, to the link of its vertex.
struct EdgeEnd {
  int edge = -1;
  int end = kTail;

  bool operator==(const EdgeEnd& o) const {
    return edge == o.edge && end == o.end;
  }
};

// One signed letter of a face's boundary word.
struct FaceSide {
  int edge;
  int sign;  // +1 for "a", -1 for "-a"
};

// Where a letter occurs: which face, which position, with which exponent.
struct Occurrence {
  int face = -1;
  int pos = -1;
  int sign = 0;
};

// A closed surface presented as polygons with boundary words, every edge
// label used exactly twice. Vertices, edge endpoints and the cyclic order
// of edge ends around each vertex (the rotation system) are derived from
// the gluing when the complex is built.
struct SurfaceComplex {
  std::string name;
  std::vector<std::string> labels;              // edge id -> label
  std::vector<Rat> weights;                     // edge id -> positive length
  std::vector<std::vector<FaceSide>> faces;     // boundary words

  std::vector<std::array<Occurrence, 2>> occurrences;  // edge id -> its two letters
  std::vector<int> tail, head;                  // edge id -> vertex id
  int num_vertices = 0;
  std::vector<std::vector<EdgeEnd>> rotation;   // vertex -> circular order of ends
  std::vector<std::pair<int, int>> end_place;   // 2*edge+end -> (vertex, rotation index)

  int edge_count() const { return static_cast<int>(labels.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int euler_characteristic() const {
    return num_vertices - edge_count() + face_count();
  }
  int end_vertex(int edge, int end) const {
    return end == kTail ? tail[edge] : head[edge];
  }
  int label_id(const std::string& label) const;  // -1 when absent
};

// Builds a complex from parts already expressed over edge ids 0..E-1 (word
// entries name edges by id). Runs the full validation and gluing pass, so
// reorientation and covering constructions reuse one code path.
SurfaceComplex build_complex(std::string name, std::vector<std::string> labels,
                             std::vector<Rat> weights,
                             std::vector<std::vector<FaceSide>> faces);

// Text format, one surface per file:
//   surface <name>
//   face <tok> ...        tok = label or -label
//   weight <label> p/q    optional, default 1/1
// '#' starts a comment. "map" and "prescribe" lines (written by the cover
// and construction tools) are ignored here.
SurfaceComplex parse_surface(const std::string& text);
std::string serialize_surface(const SurfaceComplex& s);

bool is_orientable(const SurfaceComplex& s);

// Per-face flip choices (0 keep, 1 reverse) making all boundary words
// coherent: every label then occurs once with each exponent. Returns the
// lexicographically first such vector; throws NotOrientable.
std::vector<int> consistent_orientation(const SurfaceComplex& s);

// Same complex with the chosen faces reversed. Edge ids, weights and the
// derived vertex set are unchanged; only words and rotations differ.
SurfaceComplex reoriented(const SurfaceComplex& s, const std::vector<int>& flips);

// Chain coefficients must lie in {-1,0,1} and form a single closed walk
// (conserved flow, connected support); otherwise NotAClosedWalk. True iff
// the walk embeds: some pairing of its strands at every vertex is free of
// crossings with respect to the rotation system and keeps the curve in one
// piece.
bool is_simple_on_surface(const SurfaceComplex& s, const Chain& gamma);

// The embedded walk realizing gamma when one exists (first in a fixed
// search order), as a directed edge sequence.
std::optional<std::vector<DirEdge>> simple_resolution(const SurfaceComplex& s,
                                                      const Chain& gamma);

// Any closed walk realizing gamma (no crossing constraint); used for lifts.
std::vector<DirEdge> closed_walk_of(const SurfaceComplex& s, const Chain& gamma);

Rat chain_weight(const SurfaceComplex& s, const Chain& x);
Chain chain_of_walk(const SurfaceComplex& s, const std::vector<DirEdge>& walk);

}  // namespace snlab
