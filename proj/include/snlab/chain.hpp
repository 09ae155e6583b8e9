#pragma once

#include <vector>

#include "snlab/rational.hpp"

namespace snlab {

// A 1-chain: one rational coefficient per edge of a fixed complex, indexed
// by edge id. Positive coefficient means travel along the edge's reference
// direction (tail to head).
using Chain = QVec;

// One step of a walk: edge id plus direction (+1 forward, -1 backward).
struct DirEdge {
  int edge = -1;
  int sign = 1;

  bool operator==(const DirEdge& o) const {
    return edge == o.edge && sign == o.sign;
  }
};

}  // namespace snlab
