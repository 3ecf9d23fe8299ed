#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zbnet {

/// One accent rule: `\macro{argument}` (or `\macro argument`) becomes `replacement`.
/// An empty argument denotes a standalone macro such as `\ss` or `\o`.
struct TexRule {
  std::string macro;
  std::string argument;
  std::string replacement;

  bool operator==(const TexRule&) const = default;
};

/// Ordered rule table. Later rules with the same (macro, argument) override earlier ones.
class TexNormTable {
 public:
  TexNormTable() = default;
  explicit TexNormTable(std::vector<TexRule> rules);

  /// The shipped table (data/tex_macros.tsv compiled in).
  static const TexNormTable& defaults();

  /// Reads the tab-separated rule format; `#` starts a comment line.
  static TexNormTable parse(std::istream& in);

  const std::vector<TexRule>& rules() const { return rules_; }
  const std::string* lookup(std::string_view macro, std::string_view argument) const;
  bool is_accent(std::string_view macro) const;

 private:
  std::vector<TexRule> rules_;
  std::map<std::pair<std::string, std::string>, std::string, std::less<>> index_;
  std::map<std::string, bool, std::less<>> accent_macros_;
};

/// Replaces accent macros, braced or not, with UTF-8 characters. Unknown macros are
/// copied verbatim and counted in `unknown_macros` when provided.
std::string normalize_tex(std::string_view s, const TexNormTable& table,
                          std::size_t* unknown_macros = nullptr);

}  // namespace zbnet
