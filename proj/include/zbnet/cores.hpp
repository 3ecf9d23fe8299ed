#pragma once

#include <vector>

#include "zbnet/network.hpp"

namespace zbnet {

/// pS-core at level t: the largest node set U in which every member v has
/// p(v, U) = sum of w(v, u) over neighbours u in U at least t.
struct CoreResult {
  double t = 0.0;
  std::vector<Index> members;     // ascending
  std::vector<double> p_values;   // p(v, members), aligned with members
  std::vector<Index> outside;     // ascending
  std::vector<double> witness;    // p(v, members + v) < t, aligned with outside
};

/// Min-first deletion with a lazy heap. Throws Error for a directed network or t < 0.
CoreResult ps_core(const OneModeNetwork& g, double t);

/// The core as a network over its members.
OneModeNetwork core_subnetwork(const OneModeNetwork& g, const CoreResult& core);

}  // namespace zbnet
