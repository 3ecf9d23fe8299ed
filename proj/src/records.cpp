#include "zbnet/records.hpp"

#include <charconv>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "zbnet/text.hpp"

namespace zbnet {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_blank(char c) { return c == ' ' || c == '\t'; }

// ISSN shape: 4 digits, '-', 3 digits, check digit or X.
bool is_issn_at(std::string_view s, std::size_t p) {
  if (p + 9 > s.size()) return false;
  for (std::size_t k = 0; k < 4; ++k)
    if (!is_digit(s[p + k])) return false;
  if (s[p + 4] != '-') return false;
  for (std::size_t k = 5; k < 8; ++k)
    if (!is_digit(s[p + k])) return false;
  char last = s[p + 8];
  return is_digit(last) || last == 'X' || last == 'x';
}

std::vector<std::string> find_issns(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < s.size();) {
    bool boundary = p == 0 || !is_digit(s[p - 1]);
    if (boundary && is_issn_at(s, p) && (p + 9 == s.size() || !is_digit(s[p + 9]))) {
      std::string issn(s.substr(p, 9));
      if (issn[8] == 'x') issn[8] = 'X';
      out.push_back(issn);
      p += 9;
    } else {
      ++p;
    }
  }
  return out;
}

// True when the token is made only of ISSNs separated by spaces or commas.
bool only_issns(std::string_view tok) {
  std::size_t p = 0;
  bool any = false;
  while (p < tok.size()) {
    if (tok[p] == ' ' || tok[p] == ',' || tok[p] == ';') {
      ++p;
      continue;
    }
    if (!is_issn_at(tok, p)) return false;
    any = true;
    p += 9;
  }
  return any;
}

// Splits on tabs and on runs of two or more spaces.
std::vector<std::string> split_columns(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t i = 0;
  auto flush = [&] {
    auto t = text::trim(cur);
    if (!t.empty()) out.emplace_back(t);
    cur.clear();
  };
  while (i < s.size()) {
    if (s[i] == '\t') {
      flush();
      ++i;
    } else if (s[i] == ' ' && i + 1 < s.size() && s[i + 1] == ' ') {
      flush();
      while (i < s.size() && s[i] == ' ') ++i;
    } else {
      cur.push_back(s[i++]);
    }
  }
  flush();
  return out;
}

std::vector<AuthorSlot> split_authors(std::string_view value) {
  std::vector<AuthorSlot> out;
  if (text::trim(value).empty()) return out;
  for (auto& piece : text::split_trimmed(value, ';')) {
    if (piece.empty() || piece == "-") {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(std::move(piece));
    }
  }
  return out;
}

std::string join_slots(const std::vector<AuthorSlot>& slots) {
  std::string out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out += "; ";
    out += slots[i] ? *slots[i] : "-";
  }
  return out;
}

constexpr std::string_view kStarMarker = "\u22C6";

struct PendingField {
  std::string tag;
  std::string value;
  std::size_t line;
};

class RecordBuilder {
 public:
  RecordBuilder(const TexNormTable& norm, ParseResult& result) : norm_(norm), result_(result) {}

  void start(std::string id, std::size_t line) {
    finish();
    open_ = true;
    id_ = std::move(id);
    line_ = line;
    fields_.clear();
  }

  bool open() const { return open_; }

  void add(std::string tag, std::string value, std::size_t line) {
    fields_.push_back({std::move(tag), std::move(value), line});
  }

  void append_continuation(std::string_view line) {
    if (fields_.empty()) {
      // continuation of the an line itself
      id_ = std::string(text::trim(id_ + " " + std::string(line)));
      return;
    }
    auto& v = fields_.back().value;
    std::string_view t = text::trim(line);
    if (t.empty()) return;
    v = std::string(text::trim(v));
    if (!v.empty()) v.push_back(' ');
    v.append(t);
  }

  void finish() {
    if (!open_) return;
    open_ = false;
    if (id_.empty()) {
      warn(WarningKind::MalformedRecord, line_, "record without work identifier");
      return;
    }
    Record rec;
    rec.id = id_;
    bool seen_py = false, seen_ti = false, seen_so = false, seen_se = false;
    auto scalar_seen = [&](bool& flag, const PendingField& f) {
      if (flag) warn(WarningKind::DuplicateField, f.line, "repeated field '" + f.tag + "' in " + id_);
      flag = true;
    };
    for (const PendingField& f : fields_) {
      std::string value = normalize(f.value);
      if (f.tag == "ai") {
        auto slots = split_authors(value);
        rec.authors_unified.insert(rec.authors_unified.end(), slots.begin(), slots.end());
      } else if (f.tag == "au") {
        auto slots = split_authors(value);
        rec.authors_full.insert(rec.authors_full.end(), slots.begin(), slots.end());
      } else if (f.tag == "py") {
        scalar_seen(seen_py, f);
        rec.year = parse_year(value, f.line);
      } else if (f.tag == "cc") {
        parse_msc(value, f.line, rec.msc_codes);
      } else if (f.tag == "ti") {
        scalar_seen(seen_ti, f);
        if (!value.empty()) rec.title = value;
      } else if (f.tag == "ut") {
        for (auto& phrase : text::split_trimmed(value, ';'))
          if (!phrase.empty()) rec.keywords_raw.push_back(std::move(phrase));
      } else if (f.tag == "is") {
        auto issns = find_issns(value);
        rec.issns.insert(rec.issns.end(), issns.begin(), issns.end());
      } else if (f.tag == "so") {
        scalar_seen(seen_so, f);
        rec.source = value;
      } else if (f.tag == "se") {
        scalar_seen(seen_se, f);
        auto desc = parse_journal_descriptor(value);
        if (!desc.zb_id.empty()) rec.journal = std::move(desc);
      } else {
        warn(WarningKind::UnknownTag, f.line, "unknown tag '" + f.tag + "' kept as pass-through");
        rec.extra.push_back({f.tag, value});
      }
    }
    auto& ai = rec.authors_unified;
    auto& au = rec.authors_full;
    if (!ai.empty() && !au.empty() && ai.size() != au.size()) {
      warn(WarningKind::AuthorCountMismatch, line_,
           "ai lists " + std::to_string(ai.size()) + " authors, au lists " + std::to_string(au.size()) +
               " in " + id_);
      std::size_t n = std::max(ai.size(), au.size());
      ai.resize(n);
      au.resize(n);
    }
    auto it = position_.find(rec.id);
    if (it != position_.end()) {
      warn(WarningKind::DuplicateWorkId, line_, "duplicate work id " + rec.id + "; later record kept");
      result_.records[it->second] = std::move(rec);
    } else {
      position_.emplace(rec.id, result_.records.size());
      result_.records.push_back(std::move(rec));
    }
  }

  void warn(WarningKind kind, std::size_t line, std::string message) {
    result_.warnings.push_back({kind, line, std::move(message)});
  }

 private:
  std::string normalize(std::string_view raw) {
    return normalize_tex(text::trim(raw), norm_, &result_.unknown_tex_macros);
  }

  std::optional<int> parse_year(std::string_view value, std::size_t line) {
    std::string_view v = text::trim(value);
    int year = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), year);
    if (ec != std::errc{} || ptr != v.data() + v.size() || year < 1000 || year > 2100) {
      warn(WarningKind::BadYear, line, "publication year '" + std::string(v) + "' in " + id_ + " ignored");
      return std::nullopt;
    }
    return year;
  }

  void parse_msc(std::string_view value, std::size_t line, std::vector<MscCode>& out) {
    std::string flat(value);
    for (char& c : flat)
      if (c == ';' || c == ',') c = ' ';
    for (std::string_view tok : text::split_ws(flat)) {
      bool primary = false;
      if (!tok.empty() && tok.front() == '*') {
        primary = true;
        tok.remove_prefix(1);
      } else if (text::starts_with(tok, kStarMarker)) {
        primary = true;
        tok.remove_prefix(kStarMarker.size());
      }
      if (!is_msc_code(tok)) {
        warn(WarningKind::BadMsc, line, "malformed MSC code '" + std::string(tok) + "' in " + id_);
        continue;
      }
      std::string code(tok);
      if (code[2] >= 'a' && code[2] <= 'z') code[2] = static_cast<char>(code[2] - 'a' + 'A');
      if (code[3] == 'X') code[3] = 'x';
      if (code[4] == 'X') code[4] = 'x';
      out.push_back({std::move(code), primary});
    }
  }

  const TexNormTable& norm_;
  ParseResult& result_;
  bool open_ = false;
  std::string id_;
  std::size_t line_ = 0;
  std::vector<PendingField> fields_;
  std::unordered_map<std::string, std::size_t> position_;
};

}  // namespace

std::string_view warning_kind_name(WarningKind kind) {
  switch (kind) {
    case WarningKind::MalformedRecord: return "malformed_record";
    case WarningKind::DuplicateWorkId: return "duplicate_work_id";
    case WarningKind::UnknownTag: return "unknown_tag";
    case WarningKind::AuthorCountMismatch: return "author_count_mismatch";
    case WarningKind::BadYear: return "bad_year";
    case WarningKind::BadMsc: return "bad_msc";
    case WarningKind::DuplicateField: return "duplicate_field";
    case WarningKind::MalformedLine: return "malformed_line";
  }
  return "unknown";
}

bool is_msc_code(std::string_view c) {
  if (c.size() != 5) return false;
  if (!is_digit(c[0]) || !is_digit(c[1])) return false;
  char sep = c[2];
  bool sep_ok = sep == '-' || (sep >= 'A' && sep <= 'Z') || (sep >= 'a' && sep <= 'z');
  if (!sep_ok) return false;
  std::string_view tail = c.substr(3);
  return (is_digit(tail[0]) && is_digit(tail[1])) || tail == "xx" || tail == "XX";
}

JournalDescriptor parse_journal_descriptor(std::string_view value) {
  JournalDescriptor d;
  auto cols = split_columns(value);
  if (cols.empty()) return d;
  // Single-space layouts ("00000552 Match Match 0340-6253") still lead with the id.
  if (auto sp = cols.front().find(' '); sp != std::string::npos) {
    std::string rest(text::trim(std::string_view(cols.front()).substr(sp + 1)));
    cols.front().resize(sp);
    cols.insert(cols.begin() + 1, rest);
  }
  d.zb_id = cols.front();
  cols.erase(cols.begin());
  std::vector<std::string> issns;
  while (!cols.empty()) {
    std::string& last = cols.back();
    if (only_issns(last)) {
      auto found = find_issns(last);
      issns.insert(issns.begin(), found.begin(), found.end());
      cols.pop_back();
      continue;
    }
    // trailing " 0340-6253" glued to a title
    if (last.size() > 10 && last[last.size() - 10] == ' ' && is_issn_at(last, last.size() - 9)) {
      auto found = find_issns(std::string_view(last).substr(last.size() - 9));
      issns.insert(issns.begin(), found.begin(), found.end());
      last = std::string(text::trim(std::string_view(last).substr(0, last.size() - 10)));
      continue;
    }
    break;
  }
  d.issns = std::move(issns);
  if (!cols.empty()) d.full_title = cols[0];
  for (std::size_t i = 1; i < cols.size(); ++i) {
    if (!d.short_title.empty()) d.short_title += ' ';
    d.short_title += cols[i];
  }
  return d;
}

ParseResult parse_records(std::string_view input, const TexNormTable& norm, Encoding encoding) {
  ParseResult result;
  std::string data = encoding == Encoding::Latin1 ? text::latin1_to_utf8(input) : std::string(input);
  std::string_view body = data;
  if (text::starts_with(body, "\xEF\xBB\xBF")) body.remove_prefix(3);

  RecordBuilder builder(norm, result);
  bool orphan_reported = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t nl = body.find('\n', pos);
    std::string_view line = body.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? body.size() : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;

    if (is_blank(line.front())) {
      if (builder.open()) builder.append_continuation(line);
      continue;
    }
    bool tag_ok = line.size() >= 2 && is_lower(line[0]) && is_lower(line[1]) &&
                  (line.size() == 2 || is_blank(line[2]));
    if (!tag_ok) {
      builder.warn(WarningKind::MalformedLine, lineno, "line does not start with a 2-letter field tag");
      continue;
    }
    std::string tag(line.substr(0, 2));
    std::string value(text::trim(line.substr(2)));
    if (tag == "an") {
      builder.start(std::move(value), lineno);
      orphan_reported = false;
      continue;
    }
    if (!builder.open()) {
      if (!orphan_reported) {
        builder.warn(WarningKind::MalformedRecord, lineno, "field '" + tag + "' before any 'an' line; skipped");
        orphan_reported = true;
      }
      continue;
    }
    builder.add(std::move(tag), std::move(value), lineno);
  }
  builder.finish();
  return result;
}

ParseResult parse_records(std::istream& in, const TexNormTable& norm, Encoding encoding) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_records(std::string_view(data), norm, encoding);
}

std::string serialize_records(const std::vector<Record>& records) {
  std::ostringstream out;
  for (const Record& r : records) {
    out << "an  " << r.id << '\n';
    if (!r.authors_unified.empty()) out << "ai  " << join_slots(r.authors_unified) << '\n';
    if (!r.authors_full.empty()) out << "au  " << join_slots(r.authors_full) << '\n';
    if (r.year) out << "py  " << *r.year << '\n';
    if (!r.msc_codes.empty()) {
      out << "cc  ";
      for (std::size_t i = 0; i < r.msc_codes.size(); ++i) {
        if (i > 0) out << "; ";
        out << (r.msc_codes[i].primary ? "*" : "") << r.msc_codes[i].code;
      }
      out << '\n';
    }
    if (r.title) out << "ti  " << *r.title << '\n';
    if (!r.keywords_raw.empty()) {
      out << "ut  ";
      for (std::size_t i = 0; i < r.keywords_raw.size(); ++i) out << (i > 0 ? "; " : "") << r.keywords_raw[i];
      out << '\n';
    }
    if (!r.issns.empty()) {
      out << "is  ISSN";
      for (std::size_t i = 0; i < r.issns.size(); ++i) out << (i > 0 ? "; " : " ") << r.issns[i];
      out << '\n';
    }
    if (!r.source.empty()) out << "so  " << r.source << '\n';
    if (r.journal) {
      const auto& j = *r.journal;
      out << "se  " << j.zb_id;
      if (!j.full_title.empty()) out << '\t' << j.full_title;
      if (!j.short_title.empty()) out << '\t' << j.short_title;
      if (!j.issns.empty()) {
        out << '\t';
        for (std::size_t i = 0; i < j.issns.size(); ++i) out << (i > 0 ? " " : "") << j.issns[i];
      }
      out << '\n';
    }
    for (const RawField& f : r.extra) out << f.tag << "  " << f.value << '\n';
    out << '\n';
  }
  return out.str();
}

}  // namespace zbnet
