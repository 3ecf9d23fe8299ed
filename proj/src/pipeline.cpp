#include "zbnet/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "zbnet/collab.hpp"
#include "zbnet/cores.hpp"
#include "zbnet/distribution.hpp"
#include "zbnet/entities.hpp"
#include "zbnet/islands.hpp"
#include "zbnet/pajek.hpp"
#include "zbnet/report.hpp"
#include "zbnet/subject.hpp"
#include "zbnet/text.hpp"

namespace zbnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size())
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || !std::isfinite(v))
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = text::to_lower_ascii(value);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

double idf_base_value(const std::string& name) {
  if (name == "e") return std::exp(1.0);
  if (name == "2") return 2.0;
  return 10.0;
}

std::string real(double v) { return text::format_real(v); }

// Output files of one stage, committed together.
class StageWriter {
 public:
  StageWriter(fs::path out, fs::path stage) : out_(std::move(out)), stage_(std::move(stage)) {}

  std::ostream& file(const std::string& name) { return files_[name]; }

  void json_file(const std::string& name, const json& value) { files_[name] << value.dump(2) << '\n'; }

  // Writes into a staging directory and swaps it in place of the previous output.
  void commit() {
    fs::path target = out_ / stage_;
    fs::path staging = target;
    staging += ".staging";
    fs::remove_all(staging);
    fs::create_directories(staging);
    for (auto& [name, content] : files_) write_file_atomic(staging / name, content.str());
    fs::remove_all(target);
    fs::create_directories(target.parent_path());
    fs::rename(staging, target);
  }

 private:
  fs::path out_;
  fs::path stage_;
  std::map<std::string, std::ostringstream> files_;
};

template <class Net>
std::string pajek_text(const Net& n) {
  std::ostringstream ss;
  write_pajek(ss, n);
  return ss.str();
}

fs::path store_dir(const PipelineConfig& c) { return c.out / "store"; }
fs::path networks_dir(const PipelineConfig& c) { return c.out / "networks"; }

void require_file(const fs::path& p, const std::string& hint) {
  if (!fs::is_regular_file(p)) throw MissingStage(p.string() + " not found; " + hint);
}

std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + p.string());
  return in;
}

StopwordSet load_stopwords(const PipelineConfig& c) {
  if (!c.stopwords) return default_stopwords();
  auto in = open_input(*c.stopwords);
  return read_stopwords(in);
}

KeywordOptions keyword_options(const PipelineConfig& c, StopwordSet stopwords) {
  KeywordOptions k;
  k.stopwords = std::move(stopwords);
  k.use_title = c.use_title;
  k.multiplicity = c.wk_multiplicity;
  return k;
}

std::string join(const std::set<std::string>& items, char sep) {
  std::string out;
  for (const std::string& s : items) {
    if (!out.empty()) out.push_back(sep);
    out += s;
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::vector<std::string>> read_tsv(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) rows.push_back(split_tabs(line));
  }
  return rows;
}

EntityMaps load_entity_maps(const fs::path& store) {
  EntityMaps maps;
  std::map<AuthorKey, AuthorKey> mapping;
  for (const auto& row : read_tsv(store / "authors.tsv")) {
    if (row.size() != 2) throw Error("authors.tsv: expected key and canonical key");
    mapping.emplace(AuthorKey(row[0]), AuthorKey(row[1]));
  }
  maps.authors = SynonymPartition(std::move(mapping));
  for (const auto& row : read_tsv(store / "journals.tsv")) {
    if (row.size() != 4) throw Error("journals.tsv: expected label, title, zb ids and ISSNs");
    JournalEntry e;
    e.canonical_title = row[1];
    for (auto& id : text::split_trimmed(row[2], ';'))
      if (!id.empty()) e.zb_ids.insert(id);
    for (auto& issn : text::split_trimmed(row[3], ';'))
      if (!issn.empty()) e.issns.insert(issn);
    for (const std::string& id : e.zb_ids) maps.journal_by_zb_id.emplace(id, maps.journals.size());
    maps.journals.push_back(std::move(e));
    maps.journal_labels.push_back(row[0]);
  }
  return maps;
}

void write_author_indices(std::ostream& out, const CollabBundle& collab) {
  CsvWriter csv(out);
  csv.row({"author", "cn_ii", "total", "K"});
  for (const AuthorIndexRow& r : author_indices(collab, IndexOrder::ByCnii))
    csv.row({r.author, real(r.cn_ii), std::to_string(static_cast<std::int64_t>(r.total_works)), real(r.k)});
}

json islands_json(const OneModeNetwork& g, const std::vector<Island>& islands, std::int64_t lo, std::int64_t hi) {
  json list = json::array();
  for (const Island& is : islands) {
    json nodes = json::array();
    for (Index v : is.nodes) nodes.push_back(g.nodes().label(v));
    json links = json::array();
    for (const Arc& a : is.links) links.push_back({g.nodes().label(a.row), g.nodes().label(a.col), a.weight});
    list.push_back({{"height", is.height}, {"size", is.nodes.size()}, {"nodes", nodes}, {"links", links}});
  }
  return {{"size_min", lo}, {"size_max", hi}, {"islands", list}};
}

// Collaboration outputs shared by `derive` and `subject`.
void write_collab_outputs(StageWriter& stage, const CollabBundle& collab, const PipelineConfig& c) {
  stage.file("co.net") << pajek_text(collab.co);
  stage.file("ct_prime.net") << pajek_text(collab.ct_prime);
  stage.file("cn.net") << pajek_text(collab.cn);
  write_author_indices(stage.file("author_indices.csv"), collab);
  CoreResult core = ps_core(collab.ct_prime, c.core_t);
  stage.file("core_t.net") << pajek_text(core_subnetwork(collab.ct_prime, core));
  auto islands = link_islands(collab.ct_prime, static_cast<std::size_t>(c.island_min),
                              static_cast<std::size_t>(c.island_max));
  stage.json_file("islands.json", islands_json(collab.ct_prime, islands, c.island_min, c.island_max));
}

CollabOptions collab_options(const PipelineConfig& c) {
  CollabOptions o;
  o.exclude_et_al = c.exclude_et_al;
  o.threads = static_cast<unsigned>(c.threads);
  return o;
}

void write_bias_rows(std::ostream& out, const std::vector<BiasRow>& rows) {
  CsvWriter csv(out);
  csv.row({"journal", "works", "subject_works", "fraction", "bias"});
  for (const BiasRow& r : rows)
    csv.row({r.journal, std::to_string(r.works), std::to_string(r.subject_works), real(r.fraction),
             std::isinf(r.bias) ? std::string("-inf") : real(r.bias)});
}

std::string stage_name_for_prefix(const std::string& prefix) {
  if (prefix.empty()) return "all";
  std::string out;
  for (char c : prefix) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_');
  return out;
}

json alpha_fit(const std::vector<std::int64_t>& samples, std::int64_t x_min) {
  json j = {{"x_min", x_min}};
  std::int64_t n = 0;
  for (std::int64_t x : samples) n += x >= x_min ? 1 : 0;
  j["n"] = n;
  try {
    j["alpha_approx"] = powerlaw_alpha(samples, x_min);
    j["alpha_discrete"] = powerlaw_alpha_discrete(samples, x_min);
  } catch (const Error& e) {
    j["alpha_approx"] = nullptr;
    j["alpha_discrete"] = nullptr;
    j["error"] = e.what();
  }
  return j;
}

std::vector<std::int64_t> positive_samples(const NodeVector& v) {
  std::vector<std::int64_t> out;
  for (double x : v.values)
    if (x > 0) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

}  // namespace

void apply_setting(PipelineConfig& c, const std::string& key, const std::string& value, const fs::path& base) {
  if (key == "input") {
    for (const std::string& part : text::split_trimmed(value, ','))
      if (!part.empty()) c.inputs.push_back(resolve(base, part));
  } else if (key == "encoding") {
    std::string v = text::to_lower_ascii(value);
    if (v == "utf8" || v == "utf-8") {
      c.encoding = Encoding::Utf8;
    } else if (v == "latin1" || v == "latin-1" || v == "iso-8859-1") {
      c.encoding = Encoding::Latin1;
    } else {
      throw ConfigError("encoding: expected utf8 or latin1, got '" + value + "'");
    }
  } else if (key == "tex_macros") {
    c.tex_macros = resolve(base, value);
  } else if (key == "stopwords") {
    c.stopwords = resolve(base, value);
  } else if (key == "author_rules") {
    c.author_rules = resolve(base, value);
  } else if (key == "journal_rules") {
    c.journal_rules = resolve(base, value);
  } else if (key == "external_ids") {
    c.external_ids = resolve(base, value);
  } else if (key == "alpha_samples") {
    c.alpha_samples = resolve(base, value);
  } else if (key == "idf_base") {
    c.idf_base = value;
  } else if (key == "x_min") {
    c.x_min = parse_int(key, value);
  } else if (key == "core_t") {
    c.core_t = parse_double(key, value);
  } else if (key == "island_min") {
    c.island_min = parse_int(key, value);
  } else if (key == "island_max") {
    c.island_max = parse_int(key, value);
  } else if (key == "subject") {
    c.subject = value;
  } else if (key == "min_works") {
    c.min_works = parse_int(key, value);
  } else if (key == "top_k") {
    c.top_k = parse_int(key, value);
  } else if (key == "tfidf_length") {
    c.tfidf_length = parse_int(key, value);
  } else if (key == "exclude_et_al") {
    c.exclude_et_al = parse_bool(key, value);
  } else if (key == "wk_multiplicity") {
    c.wk_multiplicity = parse_bool(key, value);
  } else if (key == "use_title") {
    c.use_title = parse_bool(key, value);
  } else if (key == "threads") {
    c.threads = parse_int(key, value);
  } else if (key == "out") {
    c.out = resolve(base, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

PipelineConfig parse_config(std::istream& in, const fs::path& base) {
  PipelineConfig c;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    std::string key(text::trim(t.substr(0, eq)));
    std::string value(text::trim(t.substr(eq + 1)));
    apply_setting(c, key, value, base);
  }
  return c;
}

PipelineConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  return parse_config(in, file.parent_path());
}

void validate(const PipelineConfig& c, Command command) {
  auto check_file = [](const std::optional<fs::path>& p, const char* what) {
    if (p && !fs::is_regular_file(*p)) throw ConfigError(std::string(what) + " not found: " + p->string());
  };
  if (command == Command::Ingest) {
    if (c.inputs.empty()) throw ConfigError("no input files given");
    for (const fs::path& p : c.inputs)
      if (!fs::is_regular_file(p)) throw ConfigError("input not found: " + p.string());
    check_file(c.tex_macros, "tex_macros");
    check_file(c.author_rules, "author_rules");
    check_file(c.journal_rules, "journal_rules");
    check_file(c.external_ids, "external_ids");
  }
  check_file(c.stopwords, "stopwords");
  check_file(c.alpha_samples, "alpha_samples");
  if (c.idf_base != "e" && c.idf_base != "2" && c.idf_base != "10") throw ConfigError("idf_base must be e, 2 or 10");
  if (c.x_min < 1) throw ConfigError("x_min must be at least 1");
  if (!(c.core_t >= 0.0)) throw ConfigError("core_t must be non-negative");
  if (c.island_min < 2 || c.island_min > c.island_max) throw ConfigError("island sizes must satisfy 1 < min <= max");
  if (c.min_works < 1) throw ConfigError("min_works must be at least 1");
  if (c.top_k < 0) throw ConfigError("top_k must be non-negative");
  if (c.tfidf_length != 2 && c.tfidf_length != 3) throw ConfigError("tfidf_length must be 2 or 3");
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  if (c.out.empty()) throw ConfigError("no output directory given");
}

void cmd_ingest(const PipelineConfig& c, std::ostream& log) {
  TexNormTable custom_table;
  const TexNormTable* table = &TexNormTable::defaults();
  if (c.tex_macros) {
    auto in = open_input(*c.tex_macros);
    custom_table = TexNormTable::parse(in);
    table = &custom_table;
  }
  std::string corpus;
  for (const fs::path& p : c.inputs) {
    corpus += read_file(p);
    corpus += '\n';
  }
  ParseResult parsed = parse_records(corpus, *table, c.encoding);

  EntityConfig ec;
  ec.partition = PartitionOptions{};
  if (c.author_rules) {
    auto in = open_input(*c.author_rules);
    ec.author_rules = read_merge_rules(in);
  }
  if (c.journal_rules) {
    auto in = open_input(*c.journal_rules);
    ec.journal_rules = read_merge_rules(in);
  }
  if (c.external_ids) {
    auto in = open_input(*c.external_ids);
    ec.external_ids = read_external_ids(in);
  }
  EntityMaps maps = build_entity_maps(parsed.records, ec);
  StopwordSet stopwords = load_stopwords(c);

  StageWriter stage(c.out, "store");
  stage.file("records.zb") << serialize_records(parsed.records);

  std::ostream& authors = stage.file("authors.tsv");
  authors << "key\tcanonical\n";
  for (const auto& [key, canon] : maps.authors.mapping()) {
    authors << key.str() << '\t' << canon.str() << '\n';
  }
  std::vector<AuthorKey> canonical_keys;
  for (const Record& r : parsed.records) {
    std::size_t slots = std::max(r.authors_unified.size(), r.authors_full.size());
    for (std::size_t i = 0; i < slots; ++i)
      if (auto k = slot_author_key(r, i); k && k->str() != kEtAlKey) canonical_keys.push_back(maps.authors.canonical(*k));
  }

  std::ostream& journals = stage.file("journals.tsv");
  journals << "label\ttitle\tzb_ids\tissns\n";
  for (std::size_t j = 0; j < maps.journals.size(); ++j) {
    const JournalEntry& e = maps.journals[j];
    journals << maps.journal_labels[j] << '\t' << e.canonical_title << '\t' << join(e.zb_ids, ';') << '\t'
             << join(e.issns, ';') << '\n';
  }

  std::ostream& sw = stage.file("stopwords.txt");
  for (const std::string& w : stopwords) sw << w << '\n';

  std::map<std::string, std::int64_t> counts;
  for (WarningKind k : {WarningKind::MalformedRecord, WarningKind::DuplicateWorkId, WarningKind::UnknownTag,
                        WarningKind::AuthorCountMismatch, WarningKind::BadYear, WarningKind::BadMsc,
                        WarningKind::DuplicateField, WarningKind::MalformedLine})
    counts[std::string(warning_kind_name(k))] = 0;
  for (const ParseWarning& w : parsed.warnings) ++counts[std::string(warning_kind_name(w.kind))];
  {
    CsvWriter csv(stage.file("warnings.csv"));
    csv.row({"category", "count"});
    for (const auto& [kind, n] : counts) csv.row({kind, std::to_string(n)});
    csv.row({"unknown_tex_macro", std::to_string(parsed.unknown_tex_macros)});
  }
  {
    CsvWriter csv(stage.file("warnings_detail.csv"));
    csv.row({"line", "category", "message"});
    for (const ParseWarning& w : parsed.warnings)
      csv.row({std::to_string(w.line), std::string(warning_kind_name(w.kind)), w.message});
  }
  {
    CsvWriter csv(stage.file("homonym_risk.csv"));
    csv.row({"author"});
    for (const AuthorKey& k : homonym_risk_keys(canonical_keys)) csv.row({k.str()});
  }
  std::set<std::string> distinct;
  for (const AuthorKey& k : canonical_keys) distinct.insert(k.str());
  stage.json_file("ingest_summary.json", {{"records", parsed.records.size()},
                                          {"warnings", parsed.warnings.size()},
                                          {"unknown_tex_macros", parsed.unknown_tex_macros},
                                          {"authors", distinct.size()},
                                          {"journals", maps.journals.size()}});
  stage.commit();
  log << "ingest: " << parsed.records.size() << " records, " << parsed.warnings.size() << " warnings\n";
}

void cmd_build(const PipelineConfig& c, std::ostream& log) {
  const fs::path store = store_dir(c);
  require_file(store / "records.zb", "run ingest first");
  ParseResult parsed = parse_records(read_file(store / "records.zb"));
  EntityMaps maps = load_entity_maps(store);
  StopwordSet stopwords;
  if (c.stopwords) {
    stopwords = load_stopwords(c);
  } else {
    std::istringstream in(read_file(store / "stopwords.txt"));
    stopwords = read_stopwords(in);
  }
  Networks nets = build_networks(parsed.records, maps, keyword_options(c, std::move(stopwords)));

  StageWriter stage(c.out, "networks");
  stage.file("wa.net") << pajek_text(nets.wa);
  stage.file("wj.net") << pajek_text(nets.wj);
  stage.file("wk.net") << pajek_text(nets.wk);
  stage.file("wm.net") << pajek_text(nets.wm);
  write_partition(stage.file("year.clu"), nets.year);
  json sizes = {{"nodes",
                 {{"works", nets.wa.rows().size()},
                  {"authors", nets.wa.cols().size()},
                  {"journals", nets.wj.cols().size()},
                  {"keywords", nets.wk.cols().size()},
                  {"mscs", nets.wm.cols().size()}}},
                {"arcs",
                 {{"wa", nets.wa.arc_count()},
                  {"wj", nets.wj.arc_count()},
                  {"wk", nets.wk.arc_count()},
                  {"wm", nets.wm.arc_count()}}}};
  stage.json_file("sizes.json", sizes);
  stage.commit();
  log << "build: " << nets.wa.rows().size() << " works, " << nets.wa.cols().size() << " authors\n";
}

Networks load_networks(const fs::path& dir) {
  auto read_net = [&](const char* name) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw Error("cannot read " + (dir / name).string());
    return read_two_mode(in);
  };
  TwoModeNetwork wa = read_net("wa.net");
  NodeSetPtr works = wa.rows_ptr();
  auto share_works = [&](TwoModeNetwork n) {
    if (!same_nodes(n.rows_ptr(), works)) throw Error("networks in " + dir.string() + " disagree on works");
    return TwoModeNetwork(works, n.cols_ptr(), n.matrix());
  };
  TwoModeNetwork wj = share_works(read_net("wj.net"));
  TwoModeNetwork wk = share_works(read_net("wk.net"));
  TwoModeNetwork wm = share_works(read_net("wm.net"));
  std::ifstream clu(dir / "year.clu", std::ios::binary);
  if (!clu) throw Error("cannot read " + (dir / "year.clu").string());
  Partition year = read_partition(clu, works);
  return Networks{std::move(wa), std::move(wj), std::move(wk), std::move(wm), std::move(year)};
}

void cmd_derive(const PipelineConfig& c, std::ostream& log) {
  require_file(networks_dir(c) / "wa.net", "run build first");
  std::ifstream in(networks_dir(c) / "wa.net", std::ios::binary);
  TwoModeNetwork wa = read_two_mode(in);
  CollabBundle collab = collaboration_networks(wa, collab_options(c));
  StageWriter stage(c.out, "derive");
  write_collab_outputs(stage, collab, c);
  stage.commit();
  log << "derive: " << collab.co.nodes().size() << " authors, " << collab.ct_prime.link_count()
      << " collaboration edges\n";
}

void cmd_subject(const PipelineConfig& c, std::ostream& log) {
  require_file(networks_dir(c) / "wa.net", "run build first");
  Networks nets = load_networks(networks_dir(c));
  SubfieldOptions o;
  o.core_t = c.core_t;
  o.island_min = static_cast<std::size_t>(c.island_min);
  o.island_max = static_cast<std::size_t>(c.island_max);
  o.min_works = c.min_works;
  o.top_k = static_cast<std::size_t>(c.top_k);
  o.idf_base = idf_base_value(c.idf_base);
  o.tfidf_length = static_cast<std::size_t>(c.tfidf_length);
  o.collab = collab_options(c);
  SubfieldReport rep = subfield_pipeline(nets, c.subject, o);

  StageWriter stage(c.out, fs::path("subject") / stage_name_for_prefix(c.subject));
  std::vector<int> tau(rep.work_selected.begin(), rep.work_selected.end());
  write_partition(stage.file("tau.clu"), Partition(nets.wa.rows_ptr(), tau));
  std::vector<int> sigma(rep.msc_selected.begin(), rep.msc_selected.end());
  write_partition(stage.file("sigma.clu"), Partition(nets.wm.cols_ptr(), sigma));
  stage.file("wa.net") << pajek_text(rep.wa);
  stage.file("wj.net") << pajek_text(rep.wj);
  stage.file("wk.net") << pajek_text(rep.wk);
  stage.file("wm.net") << pajek_text(rep.wm);
  {
    CsvWriter csv(stage.file("coclassification.csv"));
    csv.row({"msc", "works", "in_subject"});
    for (const CoclassRow& r : rep.coclassification)
      csv.row({r.msc, std::to_string(r.works), r.in_subject ? "1" : "0"});
  }
  std::vector<BiasRow> positive;
  std::vector<BiasRow> negative;
  std::vector<BiasRow> zero;
  if (rep.bias) {
    std::size_t k = c.top_k == 0 ? rep.bias->ranked.size() : static_cast<std::size_t>(c.top_k);
    for (const BiasRow& r : rep.bias->ranked)
      if (r.bias > 0.0 && positive.size() < k) positive.push_back(r);
    for (auto it = rep.bias->ranked.rbegin(); it != rep.bias->ranked.rend(); ++it)
      if (it->bias < 0.0 && negative.size() < k) negative.push_back(*it);
    zero = rep.bias->zero_subject;
  }
  write_bias_rows(stage.file("bias_positive.csv"), positive);
  write_bias_rows(stage.file("bias_negative.csv"), negative);
  write_bias_rows(stage.file("bias_zero.csv"), zero);
  {
    CsvWriter csv(stage.file("journal_share.csv"));
    csv.row({"journal", "works", "share_percent"});
    for (const JournalShare& s : rep.journal_shares) csv.row({s.journal, std::to_string(s.works), real(100.0 * s.share)});
  }
  {
    CsvWriter csv(stage.file("tfidf_top.csv"));
    csv.row({"msc", "keyword", "tf", "idf", "tfidf"});
    for (const TfidfEntry& e : rep.tfidf_top) csv.row({e.msc, e.keyword, real(e.tf), real(e.idf), real(e.tfidf)});
  }
  for (const auto& [name, table] : rep.distributions) write_distribution_csv(stage.file("dist_" + name + ".csv"), table);
  {
    CsvWriter csv(stage.file("bradford.csv"));
    csv.row({"rank", "journal", "works", "cumulative"});
    for (const BradfordPoint& p : rep.bradford)
      csv.row({std::to_string(p.rank), p.journal, std::to_string(p.works), std::to_string(p.cumulative)});
  }
  write_collab_outputs(stage, rep.collab, c);
  json summary = {{"prefix", c.subject},
                  {"works_selected", rep.works_selected},
                  {"works_total", nets.wa.rows().size()},
                  {"empty", rep.works_selected == 0}};
  if (rep.bias) {
    summary["overall_fraction"] = rep.bias->overall_fraction;
    summary["journals_below_min_works"] = rep.bias->below_min_works;
  }
  stage.json_file("summary.json", summary);
  stage.commit();
  if (rep.works_selected == 0) log << "warning: prefix '" << c.subject << "' matches no work; report is empty\n";
  log << "subject " << c.subject << ": " << rep.works_selected << " works\n";
}

void cmd_dist(const PipelineConfig& c, std::ostream& log) {
  require_file(networks_dir(c) / "wa.net", "run build first");
  Networks nets = load_networks(networks_dir(c));
  StageWriter stage(c.out, "dist");

  std::map<int, std::int64_t> years;
  for (int y : nets.year.classes) ++years[y];
  {
    CsvWriter csv(stage.file("years.csv"));
    csv.row({"year", "works"});
    for (const auto& [y, n] : years) csv.row({std::to_string(y), std::to_string(n)});
  }

  const std::map<std::string, NodeVector> vectors = {
      {"authors_per_work", degrees(nets.wa, Side::Rows, false)},
      {"works_per_author", degrees(nets.wa, Side::Cols, false)},
      {"keywords_per_work", degrees(nets.wk, Side::Rows, false)},
      {"works_per_keyword", degrees(nets.wk, Side::Cols, false)},
      {"mscs_per_work", degrees(nets.wm, Side::Rows, false)},
      {"works_per_msc", degrees(nets.wm, Side::Cols, false)},
      {"works_per_journal", degrees(nets.wj, Side::Cols, false)},
  };
  json zeros = json::object();
  json fits = json::object();
  for (const auto& [name, v] : vectors) {
    DistributionTable t = distribution(v);
    write_distribution_csv(stage.file("dist_" + name + ".csv"), t);
    zeros[name] = t.zero_count;
    fits[name] = alpha_fit(positive_samples(v), c.x_min);
  }
  stage.json_file("zero_counts.json", zeros);
  {
    CsvWriter csv(stage.file("bradford.csv"));
    csv.row({"rank", "journal", "works", "cumulative"});
    for (const BradfordPoint& p : bradford_curve(nets.wj))
      csv.row({std::to_string(p.rank), p.journal, std::to_string(p.works), std::to_string(p.cumulative)});
  }
  if (c.alpha_samples) {
    std::istringstream in(read_file(*c.alpha_samples));
    std::vector<std::int64_t> samples;
    std::string tok;
    while (in >> tok) samples.push_back(parse_int("alpha_samples", tok));
    fits["samples"] = alpha_fit(samples, c.x_min);
  }
  stage.json_file("alpha.json", fits);
  stage.commit();
  log << "dist: " << years.size() << " year classes\n";
}

int run_command(Command command, const PipelineConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config, command);
    set_thread_count(static_cast<unsigned>(config.threads));
    switch (command) {
      case Command::Ingest:
        cmd_ingest(config, log);
        break;
      case Command::Build:
        cmd_build(config, log);
        break;
      case Command::Derive:
        cmd_derive(config, log);
        break;
      case Command::Subject:
        cmd_subject(config, log);
        break;
      case Command::Dist:
        cmd_dist(config, log);
        break;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const MissingStage& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace zbnet
