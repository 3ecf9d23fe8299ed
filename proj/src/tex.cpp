#include "zbnet/tex.hpp"

#include <optional>
#include <sstream>

#include "zbnet/text.hpp"

namespace zbnet {

extern const char* const kDefaultTexMacros;

namespace {

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_blank(char c) { return c == ' ' || c == '\t'; }

struct Match {
  std::string replacement;
  std::size_t end;
};

// Reads the control sequence name after the backslash at `pos`.
std::size_t macro_name_end(std::string_view s, std::size_t pos) {
  std::size_t p = pos + 1;
  if (p >= s.size()) return p;
  if (is_ascii_letter(s[p])) {
    while (p < s.size() && is_ascii_letter(s[p])) ++p;
    return p;
  }
  std::size_t q = p;
  text::next_code_point(s, q);
  return q;
}

struct Argument {
  std::string text;
  std::size_t end;
};

std::optional<Argument> parse_argument(std::string_view s, std::size_t pos) {
  std::size_t p = pos;
  while (p < s.size() && is_blank(s[p])) ++p;
  if (p >= s.size()) return std::nullopt;
  if (s[p] == '{') {
    std::size_t close = s.find('}', p + 1);
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view inner = text::trim(s.substr(p + 1, close - p - 1));
    if (inner.find('{') != std::string_view::npos) return std::nullopt;
    return Argument{std::string(inner), close + 1};
  }
  if (s[p] == '}') return std::nullopt;
  if (s[p] == '\\') {
    std::size_t e = macro_name_end(s, p);
    std::string_view name = s.substr(p + 1, e - p - 1);
    if (name == "i" || name == "j") return Argument{"\\" + std::string(name), e};
    return std::nullopt;
  }
  std::size_t q = p;
  text::next_code_point(s, q);
  return Argument{std::string(s.substr(p, q - p)), q};
}

// `pos` points at a backslash.
std::optional<Match> match_macro(std::string_view s, std::size_t pos, const TexNormTable& table) {
  std::size_t name_end = macro_name_end(s, pos);
  std::string_view name = s.substr(pos + 1, name_end - pos - 1);
  if (name.empty()) return std::nullopt;
  if (table.is_accent(name)) {
    if (auto arg = parse_argument(s, name_end)) {
      if (const std::string* rep = table.lookup(name, arg->text)) return Match{*rep, arg->end};
    }
  }
  if (const std::string* rep = table.lookup(name, "")) {
    std::size_t end = name_end;
    if (s.substr(end, 2) == "{}") {
      end += 2;
    } else if (is_ascii_letter(name.front())) {
      while (end < s.size() && is_blank(s[end])) ++end;
    }
    return Match{*rep, end};
  }
  return std::nullopt;
}

}  // namespace

TexNormTable::TexNormTable(std::vector<TexRule> rules) : rules_(std::move(rules)) {
  for (const TexRule& r : rules_) {
    index_[{r.macro, r.argument}] = r.replacement;
    if (!r.argument.empty()) accent_macros_[r.macro] = true;
  }
}

const TexNormTable& TexNormTable::defaults() {
  static const TexNormTable table = [] {
    std::istringstream in(kDefaultTexMacros);
    return parse(in);
  }();
  return table;
}

TexNormTable TexNormTable::parse(std::istream& in) {
  std::vector<TexRule> rules;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cols = text::split_trimmed(line, '\t');
    if (cols.size() != 3 || cols[0].empty() || cols[2].empty()) continue;
    rules.push_back({cols[0], cols[1], cols[2]});
  }
  return TexNormTable(std::move(rules));
}

const std::string* TexNormTable::lookup(std::string_view macro, std::string_view argument) const {
  auto it = index_.find(std::pair<std::string, std::string>(macro, argument));
  return it == index_.end() ? nullptr : &it->second;
}

bool TexNormTable::is_accent(std::string_view macro) const {
  return accent_macros_.find(macro) != accent_macros_.end();
}

std::string normalize_tex(std::string_view s, const TexNormTable& table, std::size_t* unknown_macros) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '{' && i + 1 < s.size() && s[i + 1] == '\\') {
      // {\'a} and {\u a}: the group must close right after the macro.
      if (auto m = match_macro(s, i + 1, table); m && m->end < s.size() && s[m->end] == '}') {
        out += m->replacement;
        i = m->end + 1;
        continue;
      }
      out.push_back(c);
      ++i;
      continue;
    }
    if (c == '\\') {
      if (auto m = match_macro(s, i, table)) {
        out += m->replacement;
        i = m->end;
        continue;
      }
      std::size_t e = macro_name_end(s, i);
      out.append(s.substr(i, e - i));
      if (unknown_macros != nullptr && e > i + 1) ++*unknown_macros;
      i = e;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace zbnet
