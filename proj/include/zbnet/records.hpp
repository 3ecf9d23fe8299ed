#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zbnet/tex.hpp"

namespace zbnet {

/// A tagged field kept verbatim because its tag is not one of the known ones.
struct RawField {
  std::string tag;
  std::string value;

  bool operator==(const RawField&) const = default;
};

struct MscCode {
  std::string code;
  bool primary = false;

  bool operator==(const MscCode&) const = default;
};

/// Contents of the `se` field.
struct JournalDescriptor {
  std::string zb_id;
  std::string full_title;
  std::string short_title;
  std::vector<std::string> issns;

  bool operator==(const JournalDescriptor&) const = default;
};

/// An author slot; std::nullopt marks a missing entry (`-` in the source).
using AuthorSlot = std::optional<std::string>;

struct Record {
  std::string id;
  std::vector<AuthorSlot> authors_unified;  // ai
  std::vector<AuthorSlot> authors_full;     // au
  std::optional<int> year;
  std::vector<MscCode> msc_codes;
  std::optional<std::string> title;
  std::vector<std::string> keywords_raw;
  std::vector<std::string> issns;  // is
  std::optional<JournalDescriptor> journal;
  std::string source;
  std::vector<RawField> extra;

  bool operator==(const Record&) const = default;
};

enum class WarningKind {
  MalformedRecord,
  DuplicateWorkId,
  UnknownTag,
  AuthorCountMismatch,
  BadYear,
  BadMsc,
  DuplicateField,
  MalformedLine,
};

std::string_view warning_kind_name(WarningKind kind);

struct ParseWarning {
  WarningKind kind;
  std::size_t line = 0;
  std::string message;
};

enum class Encoding { Utf8, Latin1 };

struct ParseResult {
  std::vector<Record> records;
  std::vector<ParseWarning> warnings;
  std::size_t unknown_tex_macros = 0;
};

/// Parses field-tagged records. A record starts at a line beginning with `an`;
/// lines starting with whitespace continue the previous field.
ParseResult parse_records(std::istream& in, const TexNormTable& norm = TexNormTable::defaults(),
                          Encoding encoding = Encoding::Utf8);
ParseResult parse_records(std::string_view text, const TexNormTable& norm = TexNormTable::defaults(),
                          Encoding encoding = Encoding::Utf8);

/// True when `code` has the lexical shape of an MSC code (05C35, 62-99, 05Cxx).
bool is_msc_code(std::string_view code);

/// Splits a raw `se` value into its parts.
JournalDescriptor parse_journal_descriptor(std::string_view value);

/// Writes records back in the tagged format, fields in the order
/// an, ai, au, py, cc, ti, ut, is, so, se, then pass-through fields.
std::string serialize_records(const std::vector<Record>& records);

}  // namespace zbnet
