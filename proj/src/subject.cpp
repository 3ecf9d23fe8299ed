#include "zbnet/subject.hpp"

#include <algorithm>
#include <limits>

#include "zbnet/errors.hpp"
#include "zbnet/text.hpp"

namespace zbnet {

namespace {

std::vector<bool> columns_in(const NodeSet& cols, const std::set<std::string>& names) {
  std::vector<bool> in(cols.size(), false);
  for (Index c = 0; c < cols.size(); ++c) in[c] = names.count(cols.label(c)) != 0;
  return in;
}

std::vector<bool> columns_with_prefix(const NodeSet& cols, const std::string& prefix) {
  std::vector<bool> in(cols.size(), false);
  for (Index c = 0; c < cols.size(); ++c) in[c] = text::starts_with(cols.label(c), prefix);
  return in;
}

// Rows with at least one arc into a flagged column.
std::vector<bool> rows_touching(const TwoModeNetwork& n, const std::vector<bool>& cols) {
  std::vector<bool> out(n.rows().size(), false);
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (Index c : n.matrix().row_cols(r)) {
      if (cols[c]) {
        out[r] = true;
        break;
      }
    }
  }
  return out;
}

Partition flag_partition(const NodeSetPtr& nodes, const std::vector<bool>& flags) {
  std::vector<int> classes(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) classes[i] = flags[i] ? 1 : 0;
  return Partition(nodes, std::move(classes), {"out", "in"});
}

TwoModeNetwork select_rows(const TwoModeNetwork& n, const Partition& rows, bool drop_empty_cols) {
  ExtractOptions o;
  o.row_partition = &rows;
  o.row_classes = {1};
  o.drop_empty_cols = drop_empty_cols;
  return extract_subnetwork(n, o);
}

template <class Row, class Key>
void sort_desc(std::vector<Row>& rows, Key key) {
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return a.journal < b.journal;
  });
}

}  // namespace

double bias_value(double journal_fraction, double overall_fraction) {
  return std::log2(journal_fraction / overall_fraction);
}

BiasTable journal_bias(const TwoModeNetwork& wj, const std::vector<bool>& about, std::int64_t min_works) {
  if (min_works < 1) throw Error("min_works must be at least 1");
  if (about.size() != wj.rows().size()) throw DimensionMismatch("one subject flag per work is needed");
  BiasTable table;
  table.total_works = static_cast<std::int64_t>(about.size());
  table.subject_works = std::count(about.begin(), about.end(), true);
  if (table.subject_works == 0) throw EmptySubject("no work is about the subject");
  table.overall_fraction = static_cast<double>(table.subject_works) / static_cast<double>(table.total_works);

  std::vector<std::int64_t> works(wj.cols().size(), 0);
  std::vector<std::int64_t> subject(wj.cols().size(), 0);
  for (std::size_t w = 0; w < about.size(); ++w) {
    for (Index j : wj.matrix().row_cols(w)) {
      ++works[j];
      if (about[w]) ++subject[j];
    }
  }
  for (Index j = 0; j < works.size(); ++j) {
    if (works[j] == 0) continue;
    if (works[j] < min_works) {
      ++table.below_min_works;
      continue;
    }
    BiasRow row;
    row.journal = wj.cols().label(j);
    row.works = works[j];
    row.subject_works = subject[j];
    row.fraction = static_cast<double>(subject[j]) / static_cast<double>(works[j]);
    if (subject[j] == 0) {
      row.bias = -std::numeric_limits<double>::infinity();
      table.zero_subject.push_back(std::move(row));
    } else {
      row.bias = bias_value(row.fraction, table.overall_fraction);
      table.ranked.push_back(std::move(row));
    }
  }
  sort_desc(table.ranked, [](const BiasRow& r) { return r.bias; });
  std::sort(table.zero_subject.begin(), table.zero_subject.end(),
            [](const BiasRow& a, const BiasRow& b) { return a.journal < b.journal; });
  return table;
}

BiasTable journal_bias(const TwoModeNetwork& wj, const TwoModeNetwork& wm3, const std::set<std::string>& subject,
                       std::int64_t min_works) {
  if (subject.empty()) throw EmptySubject("subject set is empty");
  if (!same_nodes(wj.rows_ptr(), wm3.rows_ptr())) throw DimensionMismatch("WJ and WM3 must share the works");
  return journal_bias(wj, rows_touching(wm3, columns_in(wm3.cols(), subject)), min_works);
}

TwoModeNetwork shrink_msc(const TwoModeNetwork& wm, std::size_t length) {
  return shrink_cols(wm, prefix_partition(wm.cols_ptr(), length));
}

JournalProfile journal_subject_profile(const TwoModeNetwork& wj, const TwoModeNetwork& wm3,
                                       const std::set<std::string>& subject) {
  TwoModeNetwork jm = multiply(transpose(wj), binarize(wm3));
  TwoModeNetwork profile = row_normalize(jm, RowNorm::ByWeightedOutdeg);
  std::vector<bool> in = columns_in(profile.cols(), subject);
  std::vector<double> share(profile.rows().size(), 0.0);
  for (std::size_t j = 0; j < share.size(); ++j) {
    auto cs = profile.matrix().row_cols(j);
    auto vs = profile.matrix().row_values(j);
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (in[cs[k]]) share[j] += vs[k];
  }
  return JournalProfile{std::move(profile), std::move(share)};
}

TwoModeNetwork msc_keyword_network(const TwoModeNetwork& wm, const TwoModeNetwork& wk, std::size_t length,
                                   unsigned threads) {
  TwoModeNetwork mk = multiply(transpose(wm), wk, threads);
  return shrink_rows(mk, prefix_partition(mk.rows_ptr(), length));
}

std::vector<TfidfEntry> tfidf(const TwoModeNetwork& mk, double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0) throw Error("log base must be positive and not 1");
  const SparseMatrix& m = mk.matrix();
  std::size_t classes = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) classes += m.row_size(r) > 0 ? 1 : 0;
  std::vector<std::size_t> linked(m.cols(), 0);
  for (Index c : m.col_idx()) ++linked[c];
  const double log_of_base = std::log(log_base);

  std::vector<TfidfEntry> out;
  out.reserve(m.nnz());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    double row_sum = 0.0;
    for (double v : vs) row_sum += v;
    std::size_t first = out.size();
    for (std::size_t k = 0; k < cs.size(); ++k) {
      TfidfEntry e;
      e.msc = mk.rows().label(static_cast<Index>(r));
      e.keyword = mk.cols().label(cs[k]);
      e.tf = vs[k] / row_sum;
      e.idf = linked[cs[k]] == classes
                  ? 0.0
                  : std::log(static_cast<double>(classes) / static_cast<double>(linked[cs[k]])) / log_of_base;
      e.tfidf = e.tf * e.idf;
      out.push_back(std::move(e));
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), [](const TfidfEntry& a, const TfidfEntry& b) {
      if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
      return a.keyword < b.keyword;
    });
  }
  return out;
}

std::vector<TfidfEntry> tfidf_top_k(const std::vector<TfidfEntry>& entries, std::size_t k) {
  std::vector<TfidfEntry> out;
  std::size_t run = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    run = (i > 0 && entries[i].msc == entries[i - 1].msc) ? run + 1 : 0;
    if (k == 0 || run < k) out.push_back(entries[i]);
  }
  return out;
}

SubfieldReport subfield_pipeline(const Networks& nets, const std::string& prefix, const SubfieldOptions& options) {
  const TwoModeNetwork& wm = nets.wm;
  std::vector<bool> sigma = columns_with_prefix(wm.cols(), prefix);
  std::vector<bool> tau = prefix.empty() ? std::vector<bool>(wm.rows().size(), true) : rows_touching(wm, sigma);
  Partition tau_part = flag_partition(wm.rows_ptr(), tau);

  TwoModeNetwork wa = select_rows(nets.wa, tau_part, true);
  TwoModeNetwork wj = select_rows(nets.wj, tau_part, true);
  TwoModeNetwork wk = select_rows(nets.wk, tau_part, true);
  TwoModeNetwork wm_tau = select_rows(wm, tau_part, true);

  std::vector<CoclassRow> coclass;
  {
    TwoModeNetwork counts = shrink_rows(binarize(wm_tau), constant_partition(wm_tau.rows_ptr(), "works"));
    if (counts.rows().size() > 0) {
      auto cs = counts.matrix().row_cols(0);
      auto vs = counts.matrix().row_values(0);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::string& code = counts.cols().label(cs[k]);
        coclass.push_back({code, static_cast<std::int64_t>(vs[k]), text::starts_with(code, prefix)});
      }
    }
    std::sort(coclass.begin(), coclass.end(), [](const CoclassRow& a, const CoclassRow& b) {
      if (a.works != b.works) return a.works > b.works;
      return a.msc < b.msc;
    });
  }

  std::map<std::string, DistributionTable> dists;
  dists["authors_per_work"] = distribution(degrees(wa, Side::Rows, false));
  dists["works_per_author"] = distribution(degrees(wa, Side::Cols, false));
  dists["works_per_journal"] = distribution(degrees(wj, Side::Cols, false));
  dists["works_per_keyword"] = distribution(degrees(wk, Side::Cols, false));
  dists["works_per_msc"] = distribution(degrees(binarize(wm_tau), Side::Cols, false));

  std::vector<BradfordPoint> bradford = bradford_curve(wj);
  CollabBundle collab = collaboration_networks(wa, options.collab);
  CoreResult core = ps_core(collab.ct_prime, options.core_t);
  std::vector<Island> islands = link_islands(collab.ct_prime, options.island_min, options.island_max);

  std::size_t selected = static_cast<std::size_t>(std::count(tau.begin(), tau.end(), true));
  std::optional<BiasTable> bias;
  std::vector<JournalShare> shares;
  std::vector<TfidfEntry> top;
  if (selected > 0) {
    bias = journal_bias(nets.wj, tau, options.min_works);

    TwoModeNetwork wm_classes = prefix.size() <= 3 ? shrink_msc(wm, 3) : wm;
    std::set<std::string> subject_cols;
    for (Index c = 0; c < wm_classes.cols().size(); ++c)
      if (text::starts_with(wm_classes.cols().label(c), prefix)) subject_cols.insert(wm_classes.cols().label(c));
    JournalProfile profile = journal_subject_profile(nets.wj, wm_classes, subject_cols);
    NodeVector works = degrees(nets.wj, Side::Cols, false);
    for (Index j = 0; j < profile.profile.rows().size(); ++j) {
      auto n = static_cast<std::int64_t>(works.values[j]);
      if (n == 0 || n < options.min_works || profile.subject_share[j] <= 0.0) continue;
      shares.push_back({profile.profile.rows().label(j), n, profile.subject_share[j]});
    }
    sort_desc(shares, [](const JournalShare& s) { return s.share; });
    if (options.top_k > 0 && shares.size() > options.top_k) shares.resize(options.top_k);

    TwoModeNetwork mk = msc_keyword_network(wm, nets.wk, options.tfidf_length, options.collab.threads);
    std::vector<TfidfEntry> entries = tfidf(mk, options.idf_base);
    std::vector<TfidfEntry> in_field;
    const std::string row_key = prefix.substr(0, std::min(prefix.size(), options.tfidf_length));
    for (const TfidfEntry& e : entries)
      if (text::starts_with(e.msc, row_key)) in_field.push_back(e);
    top = tfidf_top_k(in_field, options.top_k);
  }

  return SubfieldReport{prefix,
                        std::move(sigma),
                        std::move(tau),
                        selected,
                        std::move(wa),
                        std::move(wj),
                        std::move(wk),
                        std::move(wm_tau),
                        std::move(coclass),
                        std::move(dists),
                        std::move(bradford),
                        std::move(collab),
                        std::move(core),
                        std::move(islands),
                        std::move(bias),
                        std::move(shares),
                        std::move(top)};
}

}  // namespace zbnet
