#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support/cli.hpp"
#include "support/oracles.hpp"
#include "zbnet/pipeline.hpp"
#include "zbnet/report.hpp"

using namespace zbnet;
using zbtest::run_cli;

namespace {

std::string config_path() { return (zbtest::data_dir() / "fixture.conf").string(); }

void run_all(const std::filesystem::path& dir) {
  for (const char* cmd : {"ingest", "build", "derive", "subject", "dist"}) {
    auto r = run_cli(dir, {"--config", config_path(), "--out", "out", cmd});
    REQUIRE_MESSAGE(r.code == 0, cmd << ": " << r.err);
  }
}

std::vector<std::vector<std::string>> csv_rows(const std::filesystem::path& p) {
  std::istringstream in(zbtest::slurp(p));
  return read_csv(in);
}

}  // namespace

TEST_CASE("config parsing and validation") {
  std::istringstream in("# c\ninput = a.zb, b.zb\nthreads = 4\nexclude_et_al = no\nidf_base = 2\n\nsubject=11\n");
  PipelineConfig c = parse_config(in, "/base");
  CHECK(c.inputs == std::vector<std::filesystem::path>{"/base/a.zb", "/base/b.zb"});
  CHECK(c.threads == 4);
  CHECK_FALSE(c.exclude_et_al);
  CHECK(c.idf_base == "2");
  CHECK(c.subject == "11");

  std::istringstream unknown("colour = blue\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream bad_number("threads = many\n");
  CHECK_THROWS_AS(parse_config(bad_number), ConfigError);
  std::istringstream no_eq("threads 4\n");
  CHECK_THROWS_AS(parse_config(no_eq), ConfigError);

  PipelineConfig v;
  v.core_t = -1;
  CHECK_THROWS_AS(validate(v, Command::Derive), ConfigError);
  v = PipelineConfig{};
  v.island_min = 1;
  CHECK_THROWS_AS(validate(v, Command::Derive), ConfigError);
  v.island_min = 5;
  v.island_max = 4;
  CHECK_THROWS_AS(validate(v, Command::Derive), ConfigError);
  v = PipelineConfig{};
  v.min_works = 0;
  CHECK_THROWS_AS(validate(v, Command::Subject), ConfigError);
  v = PipelineConfig{};
  v.idf_base = "3";
  CHECK_THROWS_AS(validate(v, Command::Subject), ConfigError);
  v = PipelineConfig{};
  v.stopwords = "/definitely/not/here.txt";
  CHECK_THROWS_AS(validate(v, Command::Build), ConfigError);
  CHECK_THROWS_AS(validate(PipelineConfig{}, Command::Ingest), ConfigError);
  CHECK_NOTHROW(validate(PipelineConfig{}, Command::Derive));
}

TEST_CASE("cli exit codes for usage and missing stages") {
  auto dir = zbtest::scratch_dir("exit");
  CHECK(run_cli(dir, {}).code == 2);
  CHECK(run_cli(dir, {"frobnicate"}).code == 2);
  CHECK(run_cli(dir, {"ingest", "--input", "missing.zb"}).code == 2);
  CHECK(run_cli(dir, {"--config", "missing.conf", "build"}).code == 2);
  auto build = run_cli(dir, {"build"});
  CHECK(build.code == 2);
  CHECK(build.err.find("run ingest first") != std::string::npos);
  auto derive = run_cli(dir, {"derive"});
  CHECK(derive.code == 2);
  CHECK(derive.err.find("run build first") != std::string::npos);
  CHECK(run_cli(dir, {"derive", "--t", "-1"}).code == 2);
  CHECK(run_cli(dir, {"--help"}).code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ingest of an empty file and of malformed data") {
  auto dir = zbtest::scratch_dir("empty");
  std::ofstream(dir / "empty.zb").close();
  auto r = run_cli(dir, {"ingest", "--input", "empty.zb"});
  CHECK(r.code == 0);
  auto summary = nlohmann::json::parse(zbtest::slurp(dir / "out/store/ingest_summary.json"));
  CHECK(summary["records"] == 0);

  std::ofstream(dir / "rules.tsv") << "a.b\tc.d\na.b\te.f\n";
  std::ofstream(dir / "bad.conf") << "input = empty.zb\nauthor_rules = rules.tsv\n";
  auto conflict = run_cli(dir, {"--config", "bad.conf", "ingest"});
  CHECK(conflict.code == 1);
  CHECK(conflict.err.find("error") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("full pipeline on the fixture") {
  auto dir = zbtest::scratch_dir("fixture");
  run_all(dir);
  auto out = dir / "out";
  CHECK_FALSE(std::filesystem::exists(dir / "should-be-overridden"));

  auto warnings = csv_rows(out / "store/warnings.csv");
  std::map<std::string, std::string> counts;
  for (std::size_t i = 1; i < warnings.size(); ++i) counts[warnings[i][0]] = warnings[i][1];
  CHECK(counts["duplicate_work_id"] == "1");
  CHECK(counts["bad_year"] == "1");
  CHECK(counts["author_count_mismatch"] == "1");
  CHECK(counts["unknown_tag"] == "0");
  auto summary = nlohmann::json::parse(zbtest::slurp(out / "store/ingest_summary.json"));
  CHECK(summary["records"] == 12);
  CHECK(summary["warnings"] == 3);

  auto sizes = nlohmann::json::parse(zbtest::slurp(out / "networks/sizes.json"));
  CHECK(sizes["nodes"]["works"] == 12);
  CHECK(sizes["nodes"]["authors"] == 8);
  CHECK(sizes["nodes"]["journals"] == 5);
  CHECK(sizes["nodes"]["keywords"] == 22);
  CHECK(sizes["nodes"]["mscs"] == 14);
  CHECK(sizes["arcs"]["wa"] == 20);
  CHECK(sizes["arcs"]["wj"] == 11);
  CHECK(sizes["arcs"]["wk"] == 27);
  CHECK(sizes["arcs"]["wm"] == 20);

  auto indices = csv_rows(out / "derive/author_indices.csv");
  CHECK(indices[0] == std::vector<std::string>{"author", "cn_ii", "total", "K"});
  CHECK(indices[1] == std::vector<std::string>{"ballico.edoardo", "3", "3", "0"});
  CHECK(indices.size() == 8);
  auto islands = nlohmann::json::parse(zbtest::slurp(out / "derive/islands.json"));
  REQUIRE(islands["islands"].size() == 2);
  CHECK(islands["islands"][0]["nodes"] == nlohmann::json{"pecaric.josip-e", "mond.bertram"});
  CHECK(islands["islands"][1]["nodes"] == nlohmann::json{"oregan.donal", "agarwal.ravi-p"});
  CHECK(zbtest::slurp(out / "derive/core_t.net").rfind("*Vertices 4\n", 0) == 0);

  auto subject = out / "subject/05C";
  auto co = csv_rows(subject / "coclassification.csv");
  REQUIRE(co.size() == 7);
  CHECK(co[1] == std::vector<std::string>{"05C35", "2", "1"});
  CHECK(co[2] == std::vector<std::string>{"68R10", "2", "0"});
  auto positive = csv_rows(subject / "bias_positive.csv");
  REQUIRE(positive.size() == 2);
  CHECK(positive[1][0] == "MATCH - Communications in Mathematical and in Computer Chemistry");
  CHECK(positive[1][4] == "2");
  CHECK(csv_rows(subject / "bias_zero.csv").size() == 5);
  auto tfidf = csv_rows(subject / "tfidf_top.csv");
  REQUIRE(tfidf.size() == 7);
  CHECK(tfidf[1][1] == "graph");
  auto share = csv_rows(subject / "journal_share.csv");
  REQUIRE(share.size() == 2);
  CHECK(share[1][2] == "50");

  auto years = csv_rows(out / "dist/years.csv");
  CHECK(years == std::vector<std::vector<std::string>>{{"year", "works"},
                                                        {"0", "1"},
                                                        {"1995", "1"},
                                                        {"1996", "1"},
                                                        {"1997", "2"},
                                                        {"1998", "1"},
                                                        {"2001", "3"},
                                                        {"2002", "2"},
                                                        {"2003", "1"}});
  for (const auto& entry : std::filesystem::directory_iterator(out / "dist")) {
    if (entry.path().filename().string().rfind("dist_", 0) != 0) continue;
    auto rows = csv_rows(entry.path());
    CHECK(rows[0] == std::vector<std::string>{"value", "f", "g"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stoll(rows[i][2]) <= std::stoll(rows[i - 1][2]));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("derive with an unreachable core level and subject edge cases") {
  auto dir = zbtest::scratch_dir("edges");
  run_all(dir);
  auto high = run_cli(dir, {"--config", config_path(), "--out", "out", "derive", "--t", "1000"});
  CHECK(high.code == 0);
  CHECK(zbtest::slurp(dir / "out/derive/core_t.net").rfind("*Vertices 0\n", 0) == 0);

  auto none = run_cli(dir, {"--config", config_path(), "--out", "out", "subject", "--prefix", "99Z"});
  CHECK(none.code == 0);
  CHECK(none.out.find("warning") != std::string::npos);
  auto empty = nlohmann::json::parse(zbtest::slurp(dir / "out/subject/99Z/summary.json"));
  CHECK(empty["empty"] == true);

  auto all = run_cli(dir, {"--config", config_path(), "--out", "out", "subject", "--prefix", "", "--top-k", "1"});
  CHECK(all.code == 0);
  auto zero = csv_rows(dir / "out/subject/all/bias_zero.csv");
  CHECK(zero.size() == 1);
  auto top = csv_rows(dir / "out/subject/05C/tfidf_top.csv");
  auto truncated = run_cli(dir, {"--config", config_path(), "--out", "out", "subject", "--top-k", "5"});
  CHECK(truncated.code == 0);
  auto five = csv_rows(dir / "out/subject/05C/tfidf_top.csv");
  REQUIRE(five.size() == 6);
  for (std::size_t i = 0; i < five.size(); ++i) CHECK(five[i] == top[i]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("power-law fit of an injected sample") {
  auto dir = zbtest::scratch_dir("alpha");
  run_all(dir);
  std::mt19937_64 rng(17);
  zbtest::DiscretePowerLaw law(2.0, 1);
  {
    std::ofstream samples(dir / "samples.txt");
    for (int i = 0; i < 50000; ++i) samples << law(rng) << '\n';
  }
  std::ofstream(dir / "alpha.conf") << "alpha_samples = samples.txt\nx_min = 1\n";
  auto r = run_cli(dir, {"--config", "alpha.conf", "--out", "out", "dist"});
  REQUIRE(r.code == 0);
  auto alpha = nlohmann::json::parse(zbtest::slurp(dir / "out/dist/alpha.json"));
  CHECK(std::abs(alpha["samples"]["alpha_discrete"].get<double>() - 2.0) <= 0.05);
  CHECK(alpha["samples"]["n"] == 50000);
  std::filesystem::remove_all(dir);
}

TEST_CASE("two runs produce identical output trees") {
  auto a = zbtest::scratch_dir("det-a");
  auto b = zbtest::scratch_dir("det-b");
  run_all(a);
  run_all(b);
  auto ta = zbtest::tree_contents(a / "out");
  auto tb = zbtest::tree_contents(b / "out");
  CHECK(ta.size() > 40);
  CHECK(ta == tb);
  auto rerun = run_cli(a, {"--config", config_path(), "--out", "out", "--threads", "4", "build"});
  CHECK(rerun.code == 0);
  CHECK(zbtest::tree_contents(a / "out") == ta);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}
