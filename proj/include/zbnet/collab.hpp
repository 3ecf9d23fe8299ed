#pragma once

#include <string>
#include <vector>

#include "zbnet/network.hpp"

namespace zbnet {

struct CollabOptions {
  bool exclude_et_al = true;
  unsigned threads = 0;
};

/// Collaboration networks over the authors of WA:
///   co       = AW * WA                       (loops count works)
///   n        = WA scaled by 1 / max(1, k)    (k = authors of the work)
///   n_prime  = WA scaled by 1 / max(1, k - 1)
///   ct_prime = n^T * n_prime summed over both directions, diagonal dropped
///   cn       = AW * n                        (loops are fractional productivity)
struct CollabBundle {
  TwoModeNetwork wa;  // after pseudo-author removal
  OneModeNetwork co;
  TwoModeNetwork n;
  TwoModeNetwork n_prime;
  OneModeNetwork ct_prime;
  OneModeNetwork cn;
};

CollabBundle collaboration_networks(const TwoModeNetwork& wa, const CollabOptions& options = {});

/// WA without the `et.al` pseudo-author column.
TwoModeNetwork drop_pseudo_authors(const TwoModeNetwork& wa);

struct AuthorIndexRow {
  std::string author;
  double cn_ii = 0.0;
  double total_works = 0.0;
  double s = 0.0;  // self-sufficiency cn_ii / total
  double k = 0.0;  // collaborativeness 1 - S
};

enum class IndexOrder { ByNode, ByCnii, ByTotal };

/// One row per author with at least one work. ByCnii and ByTotal sort descending,
/// ties by author key.
std::vector<AuthorIndexRow> author_indices(const CollabBundle& bundle, IndexOrder order = IndexOrder::ByNode);

}  // namespace zbnet
