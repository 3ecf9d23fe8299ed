#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zbnet/build.hpp"
#include "zbnet/collab.hpp"
#include "zbnet/cores.hpp"
#include "zbnet/distribution.hpp"
#include "zbnet/islands.hpp"
#include "zbnet/network.hpp"

namespace zbnet {

/// log2(journal fraction / overall fraction).
double bias_value(double journal_fraction, double overall_fraction);

struct BiasRow {
  std::string journal;
  std::int64_t works = 0;
  std::int64_t subject_works = 0;
  double fraction = 0.0;
  double bias = 0.0;  // -infinity when subject_works == 0
};

struct BiasTable {
  std::int64_t total_works = 0;
  std::int64_t subject_works = 0;
  double overall_fraction = 0.0;
  std::vector<BiasRow> ranked;        // finite bias, descending, ties by journal
  std::vector<BiasRow> zero_subject;  // bias -infinity, by journal
  std::int64_t below_min_works = 0;   // journals left out for having too few works
};

/// A work is about the subject when it has an MSC class in `subject` (columns of the
/// 3-char shrunk WM). Throws EmptySubject when `subject` is empty or no work is
/// about it, and Error when min_works < 1.
BiasTable journal_bias(const TwoModeNetwork& wj, const TwoModeNetwork& wm3, const std::set<std::string>& subject,
                       std::int64_t min_works);

/// Same with an explicit flag per work (rows of wj).
BiasTable journal_bias(const TwoModeNetwork& wj, const std::vector<bool>& about, std::int64_t min_works);

/// Shrinks MSC codes to their first `length` characters.
TwoModeNetwork shrink_msc(const TwoModeNetwork& wm, std::size_t length);

struct JournalProfile {
  TwoModeNetwork profile;             // JW * b(WM3), rows scaled to sum 1
  std::vector<double> subject_share;  // per journal: profile weight on subject columns
};

JournalProfile journal_subject_profile(const TwoModeNetwork& wj, const TwoModeNetwork& wm3,
                                       const std::set<std::string>& subject = {});

/// MSC classes (codes cut to `length` characters) by keywords: shrink of MW * WK.
TwoModeNetwork msc_keyword_network(const TwoModeNetwork& wm, const TwoModeNetwork& wk, std::size_t length,
                                   unsigned threads = 0);

struct TfidfEntry {
  std::string msc;
  std::string keyword;
  double tf = 0.0;
  double idf = 0.0;
  double tfidf = 0.0;
};

/// TF = link value / row sum; IDF = log(classes with any keyword / classes linked to
/// the keyword). Entries follow row order, then TF-IDF descending, then keyword.
std::vector<TfidfEntry> tfidf(const TwoModeNetwork& mk, double log_base = std::exp(1.0));

/// The first k entries of each MSC row (all when k == 0).
std::vector<TfidfEntry> tfidf_top_k(const std::vector<TfidfEntry>& entries, std::size_t k);

struct CoclassRow {
  std::string msc;
  std::int64_t works = 0;
  bool in_subject = false;
};

struct JournalShare {
  std::string journal;
  std::int64_t works = 0;
  double share = 0.0;
};

struct SubfieldOptions {
  double core_t = 1.0;
  std::size_t island_min = 10;
  std::size_t island_max = 30;
  std::int64_t min_works = 50;
  std::size_t top_k = 20;  // 0 keeps everything
  double idf_base = std::exp(1.0);
  std::size_t tfidf_length = 3;
  CollabOptions collab;
};

struct SubfieldReport {
  std::string prefix;
  std::vector<bool> msc_selected;  // sigma over all MSC codes
  std::vector<bool> work_selected; // tau over all works
  std::size_t works_selected = 0;
  TwoModeNetwork wa;
  TwoModeNetwork wj;
  TwoModeNetwork wk;
  TwoModeNetwork wm;
  std::vector<CoclassRow> coclassification;  // works per MSC, descending, ties by code
  std::map<std::string, DistributionTable> distributions;
  std::vector<BradfordPoint> bradford;
  CollabBundle collab;
  CoreResult core;
  std::vector<Island> islands;
  std::optional<BiasTable> bias;  // absent when no work is selected
  std::vector<JournalShare> journal_shares;
  std::vector<TfidfEntry> tfidf_top;
};

/// Restricts the networks to works with at least one MSC starting with `prefix` (all
/// works for an empty prefix) and recomputes the analyses on that field. A prefix
/// matching nothing yields an empty report.
SubfieldReport subfield_pipeline(const Networks& nets, const std::string& prefix,
                                 const SubfieldOptions& options = {});

}  // namespace zbnet
