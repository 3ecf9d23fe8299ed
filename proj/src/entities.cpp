#include "zbnet/entities.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "zbnet/errors.hpp"
#include "zbnet/text.hpp"
#include "zbnet/union_find.hpp"

namespace zbnet {

extern const char* const kDefaultStopwords;

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string strip_apostrophes(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '\'') out.push_back(c);
  return out;
}

std::vector<std::string_view> split_view(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Given part `a` abbreviates `b`: token-wise prefixes, `b` at least as long.
bool is_initialism_of(std::string_view a, std::string_view b) {
  if (a.empty() || a == b) return false;
  auto ta = split_view(a, '-');
  auto tb = split_view(b, '-');
  if (ta.size() > tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].empty() || !text::starts_with(tb[i], ta[i])) return false;
  }
  return true;
}

std::string first_code_point(std::string_view s) {
  std::size_t p = 0;
  text::next_code_point(s, p);
  return std::string(s.substr(0, p));
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.insert(text::to_lower_ascii(t));
  }
  return out;
}

}  // namespace

AuthorKey::AuthorKey(std::string key) : key_(std::move(key)) {
  std::size_t dots = std::count(key_.begin(), key_.end(), '.');
  if (dots != 1) throw std::invalid_argument("author key needs exactly one '.': " + key_);
  if (key_.front() == '.') throw std::invalid_argument("author key has an empty surname: " + key_);
  for (char c : key_) {
    if (is_space(c) || (c >= 'A' && c <= 'Z'))
      throw std::invalid_argument("author key must be lowercase without blanks: " + key_);
  }
}

std::string_view AuthorKey::surname() const {
  return std::string_view(key_).substr(0, key_.find('.'));
}

std::string_view AuthorKey::given() const {
  return std::string_view(key_).substr(key_.find('.') + 1);
}

bool is_et_al(std::string_view name) {
  std::string squeezed;
  for (char c : text::to_lower_ascii(text::trim(name)))
    if (!is_space(c) && c != '.') squeezed.push_back(c);
  return squeezed == "etal";
}

AuthorKey make_author_key(std::string_view full_name, bool* missing_comma) {
  std::string folded = text::to_lower_ascii(text::fold_to_ascii(text::trim(full_name)));
  if (text::trim(folded).empty()) throw EmptyName("empty author name");
  std::size_t comma = folded.find(',');
  if (missing_comma != nullptr) *missing_comma = comma == std::string::npos;
  std::string_view whole(folded);
  std::string_view sur = text::trim(whole.substr(0, comma));
  std::string_view giv = comma == std::string::npos ? std::string_view{} : whole.substr(comma + 1);

  std::string surname;
  for (const std::string& word : text::split_ws(sur)) {
    std::string cleaned;
    for (char c : word)
      if (c != '.') cleaned.push_back(c);
    if (cleaned.empty()) continue;
    if (!surname.empty()) surname.push_back('-');
    surname += cleaned;
  }
  if (surname.empty()) throw EmptyName("author name without a surname: " + std::string(full_name));

  std::string given;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!given.empty()) given.push_back('-');
    given += first_code_point(token);
    token.clear();
  };
  for (char c : giv) {
    if (is_space(c) || c == '.' || c == '-' || c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return AuthorKey(surname + "." + given);
}

AuthorKey unify_author_key(std::string_view unified) {
  std::string folded = text::to_lower_ascii(text::fold_to_ascii(text::trim(unified)));
  std::string out;
  bool seen_dot = false;
  for (char c : folded) {
    if (is_space(c)) continue;
    if (c == '.') {
      out.push_back(seen_dot ? '-' : '.');
      seen_dot = true;
      continue;
    }
    out.push_back(c);
  }
  if (!seen_dot) out.push_back('.');
  while (!out.empty() && out.back() == '-') out.pop_back();
  if (out.empty() || out.front() == '.') throw EmptyName("empty unified author name");
  return AuthorKey(out);
}

std::optional<AuthorKey> slot_author_key(const Record& record, std::size_t i) {
  if (i < record.authors_unified.size() && record.authors_unified[i] &&
      !text::trim(*record.authors_unified[i]).empty()) {
    const std::string& ai = *record.authors_unified[i];
    if (is_et_al(ai)) return AuthorKey(kEtAlKey);
    try {
      return unify_author_key(ai);
    } catch (const EmptyName&) {
    }
  }
  if (i < record.authors_full.size() && record.authors_full[i]) {
    const std::string& au = *record.authors_full[i];
    if (is_et_al(au)) return AuthorKey(kEtAlKey);
    try {
      return make_author_key(au);
    } catch (const EmptyName&) {
    }
  }
  return std::nullopt;
}

std::vector<MergeRule> read_merge_rules(std::istream& in) {
  std::vector<MergeRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cols;
    if (t.find('\t') != std::string_view::npos) {
      for (auto& c : text::split_trimmed(t, '\t'))
        if (!c.empty()) cols.push_back(c);
    } else {
      cols = text::split_ws(t);
    }
    if (cols.size() != 2)
      throw Error("merge rules line " + std::to_string(line_no) + ": expected two keys");
    rules.push_back({cols[0], cols[1]});
  }
  return rules;
}

ExternalIds read_external_ids(std::istream& in) {
  ExternalIds ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = text::split_trimmed(t, ',');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
      throw Error("external ids line " + std::to_string(line_no) + ": expected key,external_id");
    if (line_no == 1 && cols[0] == "key") continue;
    std::string key = unify_author_key(cols[0]).str();
    auto [it, inserted] = ids.emplace(key, cols[1]);
    if (!inserted && it->second != cols[1])
      throw ConflictingRules("key " + key + " has external ids " + it->second + " and " + cols[1]);
  }
  return ids;
}

SynonymPartition::SynonymPartition(std::map<AuthorKey, AuthorKey> mapping) : mapping_(std::move(mapping)) {}

const AuthorKey& SynonymPartition::canonical(const AuthorKey& key) const {
  auto it = mapping_.find(key);
  return it == mapping_.end() ? key : it->second;
}

SynonymPartition build_synonym_partition(const std::vector<AuthorKey>& keys, const std::vector<MergeRule>& rules,
                                         const ExternalIds* external_ids,
                                         const std::vector<std::vector<AuthorKey>>& works,
                                         const PartitionOptions& options) {
  // Directed rules: each alias has at most one target and no alias chain loops.
  std::map<std::string, std::string> target_of;
  for (const MergeRule& r : rules) {
    std::string from = unify_author_key(r.first).str();
    std::string to = unify_author_key(r.second).str();
    if (from == to) continue;
    auto [it, inserted] = target_of.emplace(from, to);
    if (!inserted && it->second != to)
      throw ConflictingRules("key " + from + " is merged into both " + it->second + " and " + to);
  }
  for (const auto& [start, _] : target_of) {
    std::vector<std::string> path{start};
    std::set<std::string> seen{start};
    for (auto it = target_of.find(start); it != target_of.end(); it = target_of.find(it->second)) {
      path.push_back(it->second);
      if (it->second == start) {
        std::string cycle;
        for (std::size_t i = 0; i < path.size(); ++i) cycle += (i ? " -> " : "") + path[i];
        throw ConflictingRules("merge rules form a cycle: " + cycle);
      }
      if (!seen.insert(it->second).second) break;
    }
  }

  std::vector<std::string> universe;
  for (const AuthorKey& k : keys) universe.push_back(k.str());
  for (const auto& [from, to] : target_of) {
    universe.push_back(from);
    universe.push_back(to);
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);

  UnionFind uf(universe.size());
  auto folded = [&](const std::string& k) { return options.fold_apostrophes ? strip_apostrophes(k) : k; };

  // Keys differing only by apostrophes.
  if (options.fold_apostrophes) {
    std::map<std::string, std::size_t> first_with;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      auto [it, inserted] = first_with.emplace(folded(universe[i]), i);
      if (!inserted) uf.unite(it->second, i);
    }
  }

  if (options.prefix_rule) {
    std::map<std::string, std::vector<std::size_t>> by_surname;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (universe[i] == kEtAlKey) continue;
      AuthorKey k(universe[i]);
      by_surname[folded(std::string(k.surname()))].push_back(i);
    }
    std::set<std::pair<std::string, std::string>> together;
    for (const auto& work : works) {
      for (std::size_t a = 0; a < work.size(); ++a) {
        for (std::size_t b = 0; b < work.size(); ++b) {
          if (a != b) together.emplace(folded(work[a].str()), folded(work[b].str()));
        }
      }
    }
    auto given_of = [&](std::size_t i) {
      std::string_view k = universe[i];
      return folded(std::string(k.substr(k.find('.') + 1)));
    };
    for (const auto& [surname, members] : by_surname) {
      if (members.size() < 2) continue;
      for (std::size_t s : members) {
        std::string gs = given_of(s);
        std::vector<std::size_t> extensions;
        for (std::size_t l : members) {
          if (is_initialism_of(gs, given_of(l))) extensions.push_back(l);
        }
        if (extensions.empty()) continue;
        bool chain = true;
        for (std::size_t x = 0; x < extensions.size() && chain; ++x) {
          for (std::size_t y = x + 1; y < extensions.size() && chain; ++y) {
            std::string gx = given_of(extensions[x]);
            std::string gy = given_of(extensions[y]);
            chain = gx == gy || is_initialism_of(gx, gy) || is_initialism_of(gy, gx);
          }
        }
        if (!chain) continue;
        for (std::size_t l : extensions) {
          if (together.count({folded(universe[s]), folded(universe[l])}) == 0) uf.unite(s, l);
        }
      }
    }
  }

  for (const auto& [from, to] : target_of) uf.unite(index.at(from), index.at(to));

  if (external_ids != nullptr) {
    std::map<std::string, std::size_t> first_with;
    for (const auto& [key, id] : *external_ids) {
      auto it = index.find(key);
      if (it == index.end()) continue;
      auto [jt, inserted] = first_with.emplace(id, it->second);
      if (!inserted) uf.unite(jt->second, it->second);
    }
  }

  std::vector<std::size_t> best(universe.size(), SIZE_MAX);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    std::size_t r = uf.find(i);
    std::size_t& b = best[r];
    if (b == SIZE_MAX || universe[i].size() > universe[b].size() ||
        (universe[i].size() == universe[b].size() && universe[i] < universe[b]))
      b = i;
  }
  std::map<AuthorKey, AuthorKey> mapping;
  for (std::size_t i = 0; i < universe.size(); ++i)
    mapping.emplace(AuthorKey(universe[i]), AuthorKey(universe[best[uf.find(i)]]));
  return SynonymPartition(std::move(mapping));
}

std::vector<AuthorKey> homonym_risk_keys(const std::vector<AuthorKey>& canonical_keys) {
  std::vector<AuthorKey> out;
  for (const AuthorKey& k : canonical_keys) {
    if (k.str() != kEtAlKey && k.given().size() <= 2) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<JournalEntry> merge_journals(const std::vector<JournalDescriptor>& descriptors,
                                         const std::vector<MergeRule>& rules) {
  struct Pooled {
    std::string zb_id;
    std::set<std::string> full_titles;
    std::set<std::string> short_titles;
    std::set<std::string> issns;
  };
  std::map<std::string, Pooled> pooled;
  for (const JournalDescriptor& d : descriptors) {
    std::string id(text::trim(d.zb_id));
    if (id.empty()) continue;
    Pooled& p = pooled[id];
    p.zb_id = id;
    if (!d.full_title.empty()) p.full_titles.insert(d.full_title);
    if (!d.short_title.empty()) p.short_titles.insert(d.short_title);
    for (const std::string& issn : d.issns) p.issns.insert(issn);
  }
  std::vector<const Pooled*> items;
  std::map<std::string, std::size_t> index;
  for (const auto& [id, p] : pooled) {
    index.emplace(id, items.size());
    items.push_back(&p);
  }

  UnionFind uf(items.size());
  std::map<std::string, std::size_t> by_issn;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (const std::string& issn : items[i]->issns) {
      auto [it, inserted] = by_issn.emplace(issn, i);
      if (!inserted) uf.unite(it->second, i);
    }
  }
  for (const MergeRule& r : rules) {
    auto a = index.find(std::string(text::trim(r.first)));
    auto b = index.find(std::string(text::trim(r.second)));
    if (a != index.end() && b != index.end()) uf.unite(a->second, b->second);
  }

  // Items are visited in zb id order, so groups come out ordered by smallest id.
  std::map<std::size_t, std::size_t> group_slot;
  std::vector<JournalEntry> out;
  std::vector<std::vector<const Pooled*>> members;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto [it, inserted] = group_slot.emplace(uf.find(i), out.size());
    if (inserted) {
      out.emplace_back();
      members.emplace_back();
    }
    JournalEntry& e = out[it->second];
    e.zb_ids.insert(items[i]->zb_id);
    e.issns.insert(items[i]->issns.begin(), items[i]->issns.end());
    members[it->second].push_back(items[i]);
  }
  auto longest = [](const std::set<std::string>& titles, std::string& best) {
    for (const std::string& t : titles) {
      if (best.empty() || t.size() > best.size() || (t.size() == best.size() && t < best)) best = t;
    }
  };
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::string title;
    for (const Pooled* p : members[g]) longest(p->full_titles, title);
    if (title.empty())
      for (const Pooled* p : members[g]) longest(p->short_titles, title);
    out[g].canonical_title = title.empty() ? *out[g].zb_ids.begin() : title;
  }
  return out;
}

std::string identity_stemmer(std::string_view word) { return std::string(word); }

std::string plural_stemmer(std::string_view word) {
  static const std::set<std::string, std::less<>> keep{"series", "species", "news"};
  std::string w(word);
  const std::size_t n = w.size();
  if (n <= 3 || keep.count(w) != 0) return w;
  if (ends_with(w, "ies")) return n > 4 ? w.substr(0, n - 3) + "y" : w;
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes"))
    return w.substr(0, n - 2);
  if (w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is") &&
      !ends_with(w, "ics"))
    return w.substr(0, n - 1);
  return w;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = [] {
    std::istringstream in(kDefaultStopwords);
    return parse_stopwords(in);
  }();
  return words;
}

StopwordSet read_stopwords(std::istream& in) { return parse_stopwords(in); }

std::vector<std::pair<std::string, int>> count_keyword_tokens(const std::vector<std::string>& phrases,
                                                              const std::optional<std::string>& title,
                                                              const StopwordSet& stopwords,
                                                              const Stemmer& stemmer) {
  std::vector<std::pair<std::string, int>> out;
  std::unordered_map<std::string, std::size_t> slot;
  auto add_text = [&](std::string_view s) {
    std::string folded = text::to_lower_ascii(text::fold_to_ascii(s));
    std::string word;
    auto flush = [&] {
      bool digits_only = std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (word.size() >= 2 && !digits_only && stopwords.count(word) == 0) {
        std::string token = stemmer ? stemmer(word) : word;
        if (!token.empty() && stopwords.count(token) == 0 &&
            token.find_first_of(" \t\r\n") == std::string::npos) {
          auto [it, inserted] = slot.emplace(token, out.size());
          if (inserted) {
            out.emplace_back(token, 1);
          } else {
            ++out[it->second].second;
          }
        }
      }
      word.clear();
    };
    for (char c : folded) {
      if (is_alnum(c)) {
        word.push_back(c);
      } else {
        flush();
      }
    }
    flush();
  };
  for (const std::string& p : phrases) add_text(p);
  if (title) add_text(*title);
  return out;
}

std::vector<std::string> tokenize_keywords(const std::vector<std::string>& phrases,
                                           const std::optional<std::string>& title,
                                           const StopwordSet& stopwords, const Stemmer& stemmer) {
  std::vector<std::string> out;
  for (auto& [token, count] : count_keyword_tokens(phrases, title, stopwords, stemmer)) out.push_back(token);
  return out;
}

std::vector<std::string> journal_labels(const std::vector<JournalEntry>& journals) {
  std::map<std::string, int> uses;
  for (const JournalEntry& j : journals) ++uses[j.canonical_title];
  std::vector<std::string> out;
  for (const JournalEntry& j : journals) {
    if (uses[j.canonical_title] > 1) {
      out.push_back(j.canonical_title + " (" + *j.zb_ids.begin() + ")");
    } else {
      out.push_back(j.canonical_title);
    }
  }
  return out;
}

EntityMaps build_entity_maps(const std::vector<Record>& records, const EntityConfig& config) {
  std::vector<AuthorKey> keys;
  std::vector<std::vector<AuthorKey>> works;
  std::vector<JournalDescriptor> descriptors;
  for (const Record& r : records) {
    std::vector<AuthorKey> work;
    std::size_t slots = std::max(r.authors_unified.size(), r.authors_full.size());
    for (std::size_t i = 0; i < slots; ++i) {
      if (auto k = slot_author_key(r, i); k && k->str() != kEtAlKey) {
        keys.push_back(*k);
        work.push_back(*k);
      }
    }
    works.push_back(std::move(work));
    if (r.journal) descriptors.push_back(*r.journal);
  }
  EntityMaps maps;
  maps.authors = build_synonym_partition(keys, config.author_rules,
                                         config.external_ids ? &*config.external_ids : nullptr, works,
                                         config.partition);
  maps.journals = merge_journals(descriptors, config.journal_rules);
  maps.journal_labels = journal_labels(maps.journals);
  for (std::size_t j = 0; j < maps.journals.size(); ++j) {
    for (const std::string& id : maps.journals[j].zb_ids) maps.journal_by_zb_id.emplace(id, j);
  }
  return maps;
}

}  // namespace zbnet
