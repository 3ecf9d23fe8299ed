#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zbnet/pipeline.hpp"

namespace {

// Registers `--flag` so that its value, when given, is applied as config key `key`.
void add_setting(CLI::App& app, std::map<std::string, std::string>& values, const std::string& flag,
                 const std::string& key, const std::string& help) {
  app.add_option_function<std::string>(
      flag, [&values, key](const std::string& v) { values[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliographic network analysis pipeline"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::map<std::string, std::string> values;
  std::vector<std::string> inputs;
  app.add_option("--config", config_path, "Configuration file (key = value lines)");
  add_setting(app, values, "--out", "out", "Output directory");
  add_setting(app, values, "--threads", "threads", "Worker threads for matrix products");

  std::map<const CLI::App*, zbnet::Command> by_app;

  CLI::App* ingest = app.add_subcommand("ingest", "Parse records, resolve entities and write the record store");
  ingest->add_option("--input,-i", inputs, "Record file (repeatable)");
  add_setting(*ingest, values, "--encoding", "encoding", "Input encoding: utf8 or latin1");
  by_app[ingest] = zbnet::Command::Ingest;

  CLI::App* build = app.add_subcommand("build", "Build the works x authors/journals/keywords/MSC networks");
  by_app[build] = zbnet::Command::Build;

  CLI::App* derive = app.add_subcommand("derive", "Collaboration networks, author indices, cores and islands");
  add_setting(*derive, values, "--t", "core_t", "pS-core threshold");
  add_setting(*derive, values, "--island-min", "island_min", "Smallest island size");
  add_setting(*derive, values, "--island-max", "island_max", "Largest island size");
  by_app[derive] = zbnet::Command::Derive;

  CLI::App* subject = app.add_subcommand("subject", "Report bundle for one MSC prefix");
  add_setting(*subject, values, "--prefix", "subject", "MSC prefix, e.g. 05C");
  add_setting(*subject, values, "--top-k", "top_k", "Rows kept in ranked tables");
  add_setting(*subject, values, "--min-works", "min_works", "Minimum works for a journal to be ranked");
  add_setting(*subject, values, "--idf-base", "idf_base", "IDF logarithm base: e, 2 or 10");
  add_setting(*subject, values, "--t", "core_t", "pS-core threshold");
  add_setting(*subject, values, "--island-min", "island_min", "Smallest island size");
  add_setting(*subject, values, "--island-max", "island_max", "Largest island size");
  by_app[subject] = zbnet::Command::Subject;

  CLI::App* dist = app.add_subcommand("dist", "Degree, year and Bradford distributions and power-law fits");
  add_setting(*dist, values, "--x-min", "x_min", "Smallest value included in the power-law fit");
  by_app[dist] = zbnet::Command::Dist;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  zbnet::PipelineConfig config;
  try {
    if (config_path) config = zbnet::load_config(*config_path);
    // Inputs given on the command line replace those from the config file.
    if (!inputs.empty()) config.inputs.clear();
    for (const std::string& in : inputs) zbnet::apply_setting(config, "input", in);
    for (const auto& [key, value] : values) zbnet::apply_setting(config, key, value);
  } catch (const zbnet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  for (const auto& [sub, command] : by_app)
    if (sub->parsed()) return zbnet::run_command(command, config, std::cout, std::cerr);
  return 2;
}
