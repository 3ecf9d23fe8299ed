#include "zbnet/collab.hpp"

#include <algorithm>

#include "zbnet/entities.hpp"

namespace zbnet {

TwoModeNetwork drop_pseudo_authors(const TwoModeNetwork& wa) {
  auto et_al = wa.cols().find(kEtAlKey);
  if (!et_al) return wa;
  std::vector<int> classes(wa.cols().size(), 1);
  classes[*et_al] = 0;
  Partition keep(wa.cols_ptr(), std::move(classes));
  ExtractOptions o;
  o.col_partition = &keep;
  o.col_classes = {1};
  return extract_subnetwork(wa, o);
}

CollabBundle collaboration_networks(const TwoModeNetwork& wa_in, const CollabOptions& options) {
  TwoModeNetwork wa = options.exclude_et_al ? drop_pseudo_authors(wa_in) : wa_in;
  TwoModeNetwork aw = transpose(wa);
  OneModeNetwork co = multiply_square(aw, wa, options.threads);
  TwoModeNetwork n = row_normalize(wa, RowNorm::ByOutdeg);
  TwoModeNetwork n_prime = row_normalize(wa, RowNorm::ByOutdegMinus1);
  OneModeNetwork ct = symmetrize_drop_diagonal(multiply_square(transpose(n), n_prime, options.threads));
  OneModeNetwork cn = multiply_square(aw, n, options.threads);
  return CollabBundle{std::move(wa), std::move(co), std::move(n), std::move(n_prime), std::move(ct), std::move(cn)};
}

std::vector<AuthorIndexRow> author_indices(const CollabBundle& bundle, IndexOrder order) {
  const NodeSet& authors = bundle.co.nodes();
  std::vector<AuthorIndexRow> rows;
  rows.reserve(authors.size());
  for (Index i = 0; i < authors.size(); ++i) {
    double total = bundle.co.weight(i, i);
    if (total <= 0.0) continue;
    AuthorIndexRow row;
    row.author = authors.label(i);
    row.cn_ii = bundle.cn.weight(i, i);
    row.total_works = total;
    row.s = row.cn_ii / total;
    row.k = 1.0 - row.s;
    rows.push_back(std::move(row));
  }
  auto by = [&](auto key) {
    std::stable_sort(rows.begin(), rows.end(), [&](const AuthorIndexRow& a, const AuthorIndexRow& b) {
      if (key(a) != key(b)) return key(a) > key(b);
      return a.author < b.author;
    });
  };
  if (order == IndexOrder::ByCnii) by([](const AuthorIndexRow& r) { return r.cn_ii; });
  if (order == IndexOrder::ByTotal) by([](const AuthorIndexRow& r) { return r.total_works; });
  return rows;
}

}  // namespace zbnet
