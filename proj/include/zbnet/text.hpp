#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zbnet::text {

std::string_view trim(std::string_view s);

// Splits on every occurrence of `sep`, trimming each piece. Empty pieces are kept.
std::vector<std::string> split_trimmed(std::string_view s, char sep);

// Splits on runs of whitespace.
std::vector<std::string> split_ws(std::string_view s);

std::string to_lower_ascii(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

// Latin-1 bytes to UTF-8.
std::string latin1_to_utf8(std::string_view bytes);

// Decodes one code point starting at s[pos]; advances pos. Invalid bytes decode
// as U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Replaces accented Latin letters with their ASCII base (é -> e, ł -> l, ß -> ss).
// Code points without a known folding are copied unchanged.
std::string fold_to_ascii(std::string_view s);

// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

}  // namespace zbnet::text
