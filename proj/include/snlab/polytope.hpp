#pragma once

#include <vector>

#include "snlab/rational.hpp"

namespace snlab {

// Convex polytope with 0 in the interior, both descriptions exact. Every
// facet is {x : normal.x <= 1}; the offset is always 1 because the
// polytopes built here are scaled that way.
struct Polytope {
  int dim = 0;
  std::vector<QVec> vertices;       // sorted lexicographically
  std::vector<QVec> facet_normals;  // sorted lexicographically
  std::vector<std::vector<int>> incidence;  // facet -> vertex ids on it
};

// Vertices of {x : row.x <= 1 for each row}, for a bounded full-dimensional
// intersection with 0 inside; throws Internal otherwise. Double description
// over the homogenizing cone, deterministic insertion order, exact output
// sorted lexicographically.
std::vector<QVec> polytope_vertices(int dim, const std::vector<QVec>& rows);

// Convex hull of a centrally symmetric spanning point set: one vertex
// enumeration on the polar body yields the facets, a second one turns them
// back into vertices (checked against the input points).
Polytope hull_centered(int dim, const std::vector<QVec>& points);

}  // namespace snlab
