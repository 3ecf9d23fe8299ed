#pragma once

#include <vector>

#include "zbnet/entities.hpp"
#include "zbnet/network.hpp"
#include "zbnet/records.hpp"

namespace zbnet {

/// The four works-centred two-mode networks plus the year partition. Node orders
/// follow first appearance in the record stream.
struct Networks {
  TwoModeNetwork wa;
  TwoModeNetwork wj;
  TwoModeNetwork wk;
  TwoModeNetwork wm;
  Partition year;  // class 0 when the year is missing
};

/// WA links a work to each of its canonical authors once; WJ to at most one journal;
/// WK to each keyword token (once, or with its count in multiplicity mode); WM to
/// each MSC code with the number of times the code is listed.
Networks build_networks(const std::vector<Record>& records, const EntityMaps& maps,
                        const KeywordOptions& keywords = {});

}  // namespace zbnet
