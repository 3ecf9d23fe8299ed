#include "zbnet/build.hpp"

#include <unordered_map>

namespace zbnet {

namespace {

// Assigns indices in first-seen order.
class LabelIndex {
 public:
  Index get(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<Index>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, Index> index_;
  std::vector<std::string> labels_;
};

}  // namespace

Networks build_networks(const std::vector<Record>& records, const EntityMaps& maps,
                        const KeywordOptions& keywords) {
  LabelIndex authors;
  LabelIndex journals;
  LabelIndex terms;
  LabelIndex mscs;
  std::vector<std::string> work_labels;
  std::vector<Arc> wa;
  std::vector<Arc> wj;
  std::vector<Arc> wk;
  std::vector<Arc> wm;
  std::vector<int> years;
  work_labels.reserve(records.size());
  years.reserve(records.size());

  for (const Record& r : records) {
    const Index w = static_cast<Index>(work_labels.size());
    work_labels.push_back(r.id);
    years.push_back(r.year.value_or(0));

    std::vector<Index> seen;
    const std::size_t slots = std::max(r.authors_unified.size(), r.authors_full.size());
    for (std::size_t i = 0; i < slots; ++i) {
      auto key = slot_author_key(r, i);
      if (!key) continue;
      Index a = authors.get(maps.authors.canonical(*key).str());
      if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
      seen.push_back(a);
      wa.push_back({w, a, 1.0});
    }

    if (r.journal) {
      auto it = maps.journal_by_zb_id.find(r.journal->zb_id);
      if (it != maps.journal_by_zb_id.end()) wj.push_back({w, journals.get(maps.journal_labels[it->second]), 1.0});
    }

    for (const auto& [token, count] :
         count_keyword_tokens(r.keywords_raw, keywords.use_title ? r.title : std::nullopt, keywords.stopwords,
                              keywords.stemmer)) {
      wk.push_back({w, terms.get(token), keywords.multiplicity ? static_cast<double>(count) : 1.0});
    }

    for (const MscCode& m : r.msc_codes) wm.push_back({w, mscs.get(m.code), 1.0});
  }

  NodeSetPtr works = make_node_set(Role::Works, std::move(work_labels));
  auto finish = [&](LabelIndex& index, Role role, std::vector<Arc>& arcs) {
    NodeSetPtr cols = make_node_set(role, index.take());
    return TwoModeNetwork(works, cols, SparseMatrix::from_arcs(works->size(), cols->size(), std::move(arcs)));
  };
  TwoModeNetwork wa_net = finish(authors, Role::Authors, wa);
  TwoModeNetwork wj_net = finish(journals, Role::Journals, wj);
  TwoModeNetwork wk_net = finish(terms, Role::Keywords, wk);
  TwoModeNetwork wm_net = finish(mscs, Role::MSCs, wm);
  return Networks{std::move(wa_net), std::move(wj_net), std::move(wk_net), std::move(wm_net),
                  Partition(works, std::move(years))};
}

}  // namespace zbnet
