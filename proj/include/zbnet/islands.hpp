#pragma once

#include <cstddef>
#include <vector>

#include "zbnet/network.hpp"

namespace zbnet {

/// A connected node set with a spanning tree whose weakest link (the height) is
/// heavier than every link leaving the set.
struct Island {
  std::vector<Index> nodes;  // ascending
  std::vector<Arc> links;    // internal edges, u < v
  double height = 0.0;

  bool operator==(const Island&) const = default;
};

/// Maximal islands with size in [size_min, size_max], ordered by height descending
/// and then by smallest node. Islands are exactly the components of the graphs
/// restricted to links of weight >= w, so a sweep over decreasing weights with a
/// union-find finds them all; links of equal weight are merged as one step.
/// Throws Error for a directed network or bounds outside 1 < size_min <= size_max.
std::vector<Island> link_islands(const OneModeNetwork& g, std::size_t size_min, std::size_t size_max);

}  // namespace zbnet
