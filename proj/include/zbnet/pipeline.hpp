#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zbnet/build.hpp"
#include "zbnet/errors.hpp"
#include "zbnet/records.hpp"

namespace zbnet {

/// Bad configuration or usage; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A stage's inputs have not been produced yet; maps to exit code 2.
class MissingStage : public Error {
 public:
  using Error::Error;
};

enum class Command { Ingest, Build, Derive, Subject, Dist };

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  Encoding encoding = Encoding::Utf8;
  std::optional<std::filesystem::path> tex_macros;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> author_rules;
  std::optional<std::filesystem::path> journal_rules;
  std::optional<std::filesystem::path> external_ids;
  std::optional<std::filesystem::path> alpha_samples;
  std::string idf_base = "e";
  std::int64_t x_min = 1;
  double core_t = 1.0;
  std::int64_t island_min = 10;
  std::int64_t island_max = 30;
  std::string subject = "05C";
  std::int64_t min_works = 50;
  std::int64_t top_k = 20;
  std::int64_t tfidf_length = 3;
  bool exclude_et_al = true;
  bool wk_multiplicity = false;
  bool use_title = true;
  std::int64_t threads = 1;
  std::filesystem::path out = "out";
};

/// Sets one `key = value` entry. Relative paths are resolved against `base`.
/// Throws ConfigError for unknown keys and malformed values.
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base = {});

/// Reads `key = value` lines; `#` starts a comment.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base = {});
PipelineConfig load_config(const std::filesystem::path& file);

/// Range and existence checks for what `command` needs. Throws ConfigError.
void validate(const PipelineConfig& config, Command command);

void cmd_ingest(const PipelineConfig& config, std::ostream& log);
void cmd_build(const PipelineConfig& config, std::ostream& log);
void cmd_derive(const PipelineConfig& config, std::ostream& log);
void cmd_subject(const PipelineConfig& config, std::ostream& log);
void cmd_dist(const PipelineConfig& config, std::ostream& log);

/// Validates, runs and maps failures to exit codes: 0 ok, 1 data error, 2 usage or
/// configuration error. Messages go to `err`.
int run_command(Command command, const PipelineConfig& config, std::ostream& log, std::ostream& err);

/// The four networks and the year partition as written by `build`.
Networks load_networks(const std::filesystem::path& dir);

}  // namespace zbnet
