#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zbnet/records.hpp"

namespace zbnet {

/// Unified author name `surname.given`: lowercase, no whitespace, exactly one '.'.
class AuthorKey {
 public:
  /// Throws std::invalid_argument when `key` violates the key shape.
  explicit AuthorKey(std::string key);

  const std::string& str() const { return key_; }
  std::string_view surname() const;
  std::string_view given() const;

  auto operator<=>(const AuthorKey&) const = default;

 private:
  std::string key_;
};

/// Pseudo-author used for "et al." entries.
inline const std::string kEtAlKey = "et.al";

bool is_et_al(std::string_view name);

/// Builds a key from a display name "Surname, Given Names". A name without a comma
/// becomes a surname with an empty given part; `missing_comma` reports that case.
/// Throws EmptyName.
AuthorKey make_author_key(std::string_view full_name, bool* missing_comma = nullptr);

/// Cleans a ZB-unified name (ai field) into key shape.
AuthorKey unify_author_key(std::string_view unified);

/// Key for author slot `i` of a record: the ai entry when present, otherwise one
/// derived from au. Empty when both are missing.
std::optional<AuthorKey> slot_author_key(const Record& record, std::size_t i);

/// `first TAB second` pairs. For author rules the first key is an alias of the second.
struct MergeRule {
  std::string first;
  std::string second;

  bool operator==(const MergeRule&) const = default;
};

std::vector<MergeRule> read_merge_rules(std::istream& in);

/// key -> external identity (CSV `key,external_id`).
using ExternalIds = std::map<std::string, std::string>;

/// Throws ConflictingRules when a key is listed with two different identities.
ExternalIds read_external_ids(std::istream& in);

struct PartitionOptions {
  bool fold_apostrophes = true;
  bool prefix_rule = true;
};

class SynonymPartition {
 public:
  SynonymPartition() = default;
  explicit SynonymPartition(std::map<AuthorKey, AuthorKey> mapping);

  /// Keys outside the partition are their own canonical form.
  const AuthorKey& canonical(const AuthorKey& key) const;
  const std::map<AuthorKey, AuthorKey>& mapping() const { return mapping_; }
  bool empty() const { return mapping_.empty(); }

 private:
  std::map<AuthorKey, AuthorKey> mapping_;
};

/// Groups keys that name the same author: same surname with a given-name
/// initialism extending unambiguously (never both on one work), explicit merge
/// rules, or a shared external identity. The canonical key of a group is its
/// longest key, ties broken lexicographically.
SynonymPartition build_synonym_partition(const std::vector<AuthorKey>& keys,
                                         const std::vector<MergeRule>& rules = {},
                                         const ExternalIds* external_ids = nullptr,
                                         const std::vector<std::vector<AuthorKey>>& works = {},
                                         const PartitionOptions& options = {});

/// Canonical keys whose given part has at most two characters.
std::vector<AuthorKey> homonym_risk_keys(const std::vector<AuthorKey>& canonical_keys);

struct JournalEntry {
  std::set<std::string> zb_ids;
  std::string canonical_title;
  std::set<std::string> issns;

  bool operator==(const JournalEntry&) const = default;
};

/// Coalesces descriptors that share an ISSN, a zb id, or a merge rule. Output is
/// ordered by smallest zb id, so it does not depend on input order.
std::vector<JournalEntry> merge_journals(const std::vector<JournalDescriptor>& descriptors,
                                         const std::vector<MergeRule>& rules = {});

using Stemmer = std::function<std::string(std::string_view)>;
using StopwordSet = std::set<std::string, std::less<>>;

std::string identity_stemmer(std::string_view word);

/// Strips English plural endings: -ies -> -y, -sses/-xes/-ches/-shes/-zes -> drop "es",
/// otherwise a final -s unless the word ends in -ss, -us, -is or -ics.
std::string plural_stemmer(std::string_view word);

const StopwordSet& default_stopwords();
StopwordSet read_stopwords(std::istream& in);

struct KeywordOptions {
  StopwordSet stopwords = default_stopwords();
  Stemmer stemmer = plural_stemmer;
  bool use_title = true;
  bool multiplicity = false;
};

/// Keyword tokens of one work with their occurrence counts, in first-seen order.
std::vector<std::pair<std::string, int>> count_keyword_tokens(const std::vector<std::string>& phrases,
                                                              const std::optional<std::string>& title,
                                                              const StopwordSet& stopwords,
                                                              const Stemmer& stemmer);

/// Distinct keyword tokens of one work, in first-seen order.
std::vector<std::string> tokenize_keywords(const std::vector<std::string>& phrases,
                                           const std::optional<std::string>& title,
                                           const StopwordSet& stopwords, const Stemmer& stemmer);

struct EntityConfig {
  std::vector<MergeRule> author_rules;
  std::optional<ExternalIds> external_ids;
  std::vector<MergeRule> journal_rules;
  PartitionOptions partition;
};

struct EntityMaps {
  SynonymPartition authors;
  std::vector<JournalEntry> journals;
  std::vector<std::string> journal_labels;  // node label per entry
  std::map<std::string, std::size_t> journal_by_zb_id;
};

/// Unique node labels for merged journals: the canonical title, suffixed with the
/// smallest zb id when two entries share a title.
std::vector<std::string> journal_labels(const std::vector<JournalEntry>& journals);

EntityMaps build_entity_maps(const std::vector<Record>& records, const EntityConfig& config = {});

}  // namespace zbnet
