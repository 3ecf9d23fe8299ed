#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "zbnet/distribution.hpp"

namespace zbnet {

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// Parses RFC 4180 text (quoted fields may span lines).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// value,f,g rows.
void write_distribution_csv(std::ostream& out, const DistributionTable& table);

}  // namespace zbnet
