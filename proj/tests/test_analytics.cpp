#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "zbnet/build.hpp"
#include "zbnet/distribution.hpp"
#include "zbnet/errors.hpp"
#include "zbnet/report.hpp"
#include "zbnet/subject.hpp"

using namespace zbnet;

namespace {

Networks fixture_networks(const KeywordOptions& k = {}) {
  ParseResult parsed = parse_records(read_file(zbtest::data_dir() / "fixture.zb"));
  return build_networks(parsed.records, build_entity_maps(parsed.records), k);
}

std::map<std::string, double> row_of(const TwoModeNetwork& n, const std::string& row) {
  std::map<std::string, double> out;
  Index r = *n.rows().find(row);
  auto cols = n.matrix().row_cols(r);
  auto vals = n.matrix().row_values(r);
  for (std::size_t i = 0; i < cols.size(); ++i) out[n.cols().label(cols[i])] = vals[i];
  return out;
}

TwoModeNetwork journal_works(std::vector<Index> journal_of_work, std::size_t journals) {
  std::vector<Arc> arcs;
  for (Index w = 0; w < journal_of_work.size(); ++w) arcs.push_back({w, journal_of_work[w], 1.0});
  return TwoModeNetwork(make_node_set(Role::Works, zbtest::numbered("w", journal_of_work.size())),
                        make_node_set(Role::Journals, zbtest::numbered("j", journals)),
                        SparseMatrix::from_arcs(journal_of_work.size(), journals, std::move(arcs)));
}

}  // namespace

TEST_CASE("build_networks on a single record") {
  ParseResult r = parse_records("an  A\nau  X, Y; Z, W; Q, R\ncc  *05C35; 05C38\n");
  Networks n = build_networks(r.records, build_entity_maps(r.records));
  CHECK(n.wa.arc_count() == 3);
  for (const Arc& a : n.wa.matrix().arcs()) CHECK(a.weight == 1.0);
  CHECK(n.wm.matrix().arcs() == std::vector<Arc>{{0, 0, 1.0}, {0, 1, 1.0}});
  TwoModeNetwork wm3 = shrink_msc(n.wm, 3);
  CHECK(wm3.matrix().arcs() == std::vector<Arc>{{0, 0, 2.0}});
  CHECK(wm3.cols().labels() == std::vector<std::string>{"05C"});
}

TEST_CASE("fixture networks match hand counts") {
  Networks n = fixture_networks();
  CHECK(n.wa.rows().size() == 12);
  CHECK(n.wa.arc_count() == 20);
  CHECK(n.wj.arc_count() == 11);
  CHECK(n.wk.arc_count() == 27);
  CHECK(n.wm.arc_count() == 20);
  CHECK(n.wm.cols().size() == 14);
  CHECK(shrink_msc(n.wm, 3).cols().size() == 10);
  CHECK(n.wj.cols().labels() ==
        std::vector<std::string>{"Journal of Inequalities", "Algebraic Geometry Letters",
                                 "MATCH - Communications in Mathematical and in Computer Chemistry",
                                 "Nonlinear Analysis", "Computer Physics Communications"});
  CHECK(n.wk.cols().labels() ==
        std::vector<std::string>{"inequality", "convex", "function", "mean", "vector", "bundle", "curve",
                                 "projective", "space", "graph", "colouring", "chromatic", "number", "path",
                                 "tree", "boundary", "value", "problem", "fixed", "point", "distributed",
                                 "monitoring"});
  CHECK(row_of(n.wa, "W05") == std::map<std::string, double>{{"oregan.donal", 1}, {"agarwal.ravi-p", 1}, {"mustata.c", 1}});
  CHECK(row_of(n.wa, "W10") == std::map<std::string, double>{{"aderholz.m", 1}, {"et.al", 1}});
  CHECK(row_of(n.wk, "W06") == std::map<std::string, double>{{"path", 1}, {"graph", 1}});
  CHECK(row_of(n.wj, "W07").empty());
  CHECK(degrees(n.wj, Side::Cols, false).values == std::vector<double>{3, 3, 2, 2, 1});
  CHECK(degrees(n.wa, Side::Cols, false).values == std::vector<double>{3, 3, 3, 4, 3, 2, 1, 1});

  std::map<int, int> years;
  for (int y : n.year.classes) ++years[y];
  CHECK(years == std::map<int, int>{{0, 1}, {1995, 1}, {1996, 1}, {1997, 2}, {1998, 1}, {2001, 3}, {2002, 2}, {2003, 1}});

  KeywordOptions counted;
  counted.multiplicity = true;
  Networks m = fixture_networks(counted);
  CHECK(row_of(m.wk, "W06") == std::map<std::string, double>{{"path", 2}, {"graph", 1}});
  CHECK(row_of(m.wk, "W01")["convex"] == 2.0);
}

TEST_CASE("distribution tables") {
  DistributionTable t = distribution(std::vector<double>{1, 1, 2, 0});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].value == 1);
  CHECK(t.rows[0].f == 2);
  CHECK(t.rows[0].g == 3);
  CHECK(t.rows[1].f == 1);
  CHECK(t.rows[1].g == 1);
  CHECK(t.zero_count == 1);
  DistributionTable u = distribution(std::vector<double>{1, 1, 1, 1, 2, 2, 3});
  CHECK(u.rows[0].g == 7);
  CHECK(u.rows[1].g == 3);
  CHECK(u.rows[2].g == 1);
  CHECK_THROWS_AS(distribution(std::vector<double>{1.5}), Error);
  CHECK_THROWS_AS(distribution(std::vector<double>{-1}), Error);

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + trial);
    for (double& x : xs) x = v(rng);
    DistributionTable d = distribution(xs);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      sum += d.rows[i].f;
      if (i > 0) CHECK(d.rows[i].g <= d.rows[i - 1].g);
    }
    CHECK(sum + d.zero_count == static_cast<std::int64_t>(xs.size()));
  }
}

TEST_CASE("power-law estimators") {
  CHECK(powerlaw_alpha({1, 2}, 1) == doctest::Approx(1.0 + 2.0 / (std::log(2.0) + std::log(4.0))).epsilon(1e-14));
  CHECK(powerlaw_alpha({1, 2}, 1) == doctest::Approx(1.0 + 2.0 / (3.0 * std::log(2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(powerlaw_alpha({3, 3, 3}, 3), Error);
  CHECK_THROWS_AS(powerlaw_alpha_discrete({3, 3, 3}, 3), Error);
  CHECK_THROWS_AS(powerlaw_alpha({1, 2}, 5), NoSamplesAboveXmin);
  CHECK_THROWS_AS(powerlaw_alpha({1, 2}, 0), Error);

  // The discrete estimate solves sum ln x / n = -zeta'(a, x_min) / zeta(a, x_min).
  std::vector<std::int64_t> xs = {1, 1, 1, 2, 2, 3, 5, 8, 13};
  double a = powerlaw_alpha_discrete(xs, 1);
  double mean_log = 0.0;
  for (auto x : xs) mean_log += std::log(static_cast<double>(x));
  mean_log /= static_cast<double>(xs.size());
  double h = 1e-5;
  double dlogz = (std::log(hurwitz_zeta(a + h, 1.0)) - std::log(hurwitz_zeta(a - h, 1.0))) / (2 * h);
  CHECK(-dlogz == doctest::Approx(mean_log).epsilon(1e-6));
}

TEST_CASE("Hurwitz zeta reference values") {
  const double pi = std::acos(-1.0);
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-13));
  CHECK(hurwitz_zeta(2.0, 2.0) == doctest::Approx(pi * pi / 6.0 - 1.0).epsilon(1e-13));
  CHECK(hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595942).epsilon(1e-13));
  CHECK(hurwitz_zeta(1.5, 1.0) == doctest::Approx(2.6123753486854883).epsilon(1e-12));
  double direct = 0.0;
  for (int k = 10; k < 2000000; ++k) direct += std::pow(k, -2.5);
  CHECK(hurwitz_zeta(2.5, 10.0) == doctest::Approx(direct + 2.0 / 3.0 * std::pow(2000000.0, -1.5)).epsilon(1e-9));
}

TEST_CASE("power-law fit on a synthetic sample") {
  std::mt19937_64 rng(1234);
  zbtest::DiscretePowerLaw law(2.5, 1);
  std::vector<std::int64_t> xs(20000);
  for (auto& x : xs) x = law(rng);
  CHECK(std::abs(powerlaw_alpha_discrete(xs, 1) - 2.5) <= 0.05);
}

TEST_CASE("Bradford curve") {
  auto curve = bradford_curve(journal_works({0, 0, 0, 0, 0, 1, 1, 1, 2, 2}, 3));
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].cumulative == 5);
  CHECK(curve[1].cumulative == 8);
  CHECK(curve[2].cumulative == 10);
  CHECK(curve[2].rank == 3);
  auto single = bradford_curve(journal_works({0, 0, 0}, 1));
  REQUIRE(single.size() == 1);
  CHECK(single[0].cumulative == 3);
}

TEST_CASE("bias formula") {
  CHECK(bias_value(0.25, 0.25) == 0.0);
  CHECK(bias_value(0.5, 0.25) == 1.0);
  CHECK(bias_value(0.125, 0.25) == -1.0);
  CHECK(std::isinf(bias_value(0.0, 0.25)));
}

TEST_CASE("journal bias tables") {
  // 8 works: j1 holds w1..w4 (2 about), j2 holds w5..w8 (0 about)
  TwoModeNetwork wj = journal_works({0, 0, 0, 0, 1, 1, 1, 1}, 2);
  BiasTable t = journal_bias(wj, {true, true, false, false, false, false, false, false}, 1);
  CHECK(t.overall_fraction == 0.25);
  REQUIRE(t.ranked.size() == 1);
  CHECK(t.ranked[0].bias == 1.0);
  REQUIRE(t.zero_subject.size() == 1);
  CHECK(std::isinf(t.zero_subject[0].bias));
  CHECK_THROWS_AS(journal_bias(wj, std::vector<bool>(8, false), 1), EmptySubject);
}

TEST_CASE("bias is invariant under duplicating every work") {
  Networks n = fixture_networks();
  TwoModeNetwork wm3 = shrink_msc(n.wm, 3);
  std::set<std::string> subject = {"05C"};
  BiasTable once = journal_bias(n.wj, wm3, subject, 1);

  auto doubled = [](const TwoModeNetwork& net) {
    std::size_t w = net.rows().size();
    std::vector<std::string> labels = net.rows().labels();
    for (std::size_t i = 0; i < w; ++i) labels.push_back(net.rows().label(i) + "-copy");
    std::vector<Arc> arcs = net.matrix().arcs();
    for (const Arc& a : net.matrix().arcs()) arcs.push_back({static_cast<Index>(a.row + w), a.col, a.weight});
    return TwoModeNetwork(make_node_set(Role::Works, labels), net.cols_ptr(),
                          SparseMatrix::from_arcs(2 * w, net.cols().size(), arcs));
  };
  TwoModeNetwork wj2 = doubled(n.wj);
  TwoModeNetwork wm32(wj2.rows_ptr(), doubled(wm3).cols_ptr(), doubled(wm3).matrix());
  BiasTable twice = journal_bias(wj2, wm32, subject, 1);
  REQUIRE(twice.ranked.size() == once.ranked.size());
  for (std::size_t i = 0; i < once.ranked.size(); ++i) {
    CHECK(twice.ranked[i].journal == once.ranked[i].journal);
    CHECK(twice.ranked[i].bias == once.ranked[i].bias);
  }
  CHECK(twice.zero_subject.size() == once.zero_subject.size());
  CHECK(once.ranked.size() == 1);
  CHECK(once.ranked[0].bias == 2.0);
  CHECK_THROWS_AS(journal_bias(n.wj, wm3, {}, 1), EmptySubject);
  CHECK_THROWS_AS(journal_bias(n.wj, wm3, {"99Z"}, 1), EmptySubject);
  CHECK_THROWS_AS(journal_bias(n.wj, wm3, subject, 0), Error);
}

TEST_CASE("journal subject profile") {
  auto works = make_node_set(Role::Works, {"w1", "w2", "w3"});
  auto journals = make_node_set(Role::Journals, {"j", "k"});
  auto classes = make_node_set(Role::MSCs, {"05C", "11A"});
  TwoModeNetwork wj(works, journals, SparseMatrix::from_arcs(3, 2, {{0, 0, 1}, {1, 0, 1}, {2, 1, 1}}));
  TwoModeNetwork wm3(works, classes, SparseMatrix::from_arcs(3, 2, {{0, 0, 2}, {1, 1, 2}, {2, 0, 1}}));
  JournalProfile p = journal_subject_profile(wj, wm3, {"05C"});
  CHECK(p.profile.matrix().at(0, 0) == 0.5);
  CHECK(p.profile.matrix().at(0, 1) == 0.5);
  CHECK(p.profile.matrix().at(1, 0) == 1.0);
  CHECK(p.subject_share == std::vector<double>{0.5, 1.0});

  Networks n = fixture_networks();
  JournalProfile fp = journal_subject_profile(n.wj, shrink_msc(n.wm, 3), {"05C"});
  CHECK(row_of(fp.profile, "MATCH - Communications in Mathematical and in Computer Chemistry") ==
        std::map<std::string, double>{{"05C", 0.5}, {"68R", 0.25}, {"90B", 0.25}});
  CHECK(row_of(fp.profile, "Journal of Inequalities") == std::map<std::string, double>{{"26D", 0.75}, {"26A", 0.25}});
  for (std::size_t r = 0; r < fp.profile.rows().size(); ++r) {
    double sum = 0.0;
    for (double v : fp.profile.matrix().row_values(r)) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("TF-IDF formula cases") {
  auto classes = make_node_set(Role::MSCs, zbtest::numbered("m", 10));
  auto words = make_node_set(Role::Keywords, {"common", "rare", "other"});
  std::vector<Arc> arcs;
  for (Index m = 0; m < 10; ++m) arcs.push_back({m, 0, 1.0});
  arcs.push_back({0, 1, 1.0});
  arcs.push_back({0, 2, 3.0});
  TwoModeNetwork mk(classes, words, SparseMatrix::from_arcs(10, 3, arcs));
  auto entries = tfidf(mk);
  for (const TfidfEntry& e : entries) {
    if (e.keyword == "common") CHECK(e.tfidf == 0.0);
    if (e.keyword == "rare") {
      CHECK(e.tf == doctest::Approx(0.2).epsilon(1e-15));
      CHECK(e.tfidf == doctest::Approx(0.2 * std::log(10.0)).epsilon(1e-12));
      CHECK(std::abs(e.tfidf - 0.46052) < 1e-5);
    }
  }
  CHECK(tfidf_top_k(entries, 1).size() == 10);
  auto base2 = tfidf(mk, 2.0);
  for (const TfidfEntry& e : base2)
    if (e.keyword == "rare") CHECK(e.idf == doctest::Approx(std::log2(10.0)).epsilon(1e-12));
}

TEST_CASE("TF sums to one per MSC on random networks") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    TwoModeNetwork mk = zbtest::random_two_mode(rng, Role::MSCs, 1 + trial % 8, Role::Keywords, 1 + trial % 11, 0.4,
                                                trial % 2 == 0);
    std::map<std::string, double> sums;
    for (const TfidfEntry& e : tfidf(mk)) {
      sums[e.msc] += e.tf;
      CHECK(e.tfidf >= 0.0);
    }
    for (const auto& [m, s] : sums) CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("fixture TF-IDF for graph theory") {
  Networks n = fixture_networks();
  TwoModeNetwork mk = msc_keyword_network(n.wm, n.wk, 3);
  CHECK(mk.rows().size() == 10);
  std::map<std::string, TfidfEntry> row;
  for (const TfidfEntry& e : tfidf(mk))
    if (e.msc == "05C") row[e.keyword] = e;
  REQUIRE(row.size() == 6);
  CHECK(row["graph"].tf == doctest::Approx(4.0 / 13.0).epsilon(1e-14));
  CHECK(row["path"].tf == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
  CHECK(row["tree"].tf == doctest::Approx(1.0 / 13.0).epsilon(1e-14));
  CHECK(row["graph"].idf == doctest::Approx(std::log(10.0 / 3.0)).epsilon(1e-12));
  CHECK(row["tree"].idf == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(row["graph"].tfidf == doctest::Approx(4.0 / 13.0 * std::log(10.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("graph theory subfield of the fixture") {
  Networks n = fixture_networks();
  SubfieldOptions o;
  o.min_works = 1;
  o.island_min = 2;
  o.island_max = 3;
  SubfieldReport r = subfield_pipeline(n, "05C", o);
  CHECK(r.works_selected == 3);
  CHECK(r.wa.rows().labels() == std::vector<std::string>{"W05", "W06", "W07"});
  std::vector<std::pair<std::string, std::int64_t>> co;
  for (const CoclassRow& c : r.coclassification) co.emplace_back(c.msc, c.works);
  CHECK(co == std::vector<std::pair<std::string, std::int64_t>>{
                  {"05C35", 2}, {"68R10", 2}, {"05C05", 1}, {"05C15", 1}, {"05C38", 1}, {"90B10", 1}});
  CHECK(r.collab.ct_prime.link_count() == 3);
  CHECK(r.collab.ct_prime.weight(0, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r.collab.ct_prime.weight(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  REQUIRE(r.bias);
  REQUIRE(r.bias->ranked.size() == 1);
  CHECK(r.bias->ranked[0].bias == 2.0);
  CHECK(r.bias->zero_subject.size() == 4);
  REQUIRE(r.journal_shares.size() == 1);
  CHECK(r.journal_shares[0].share == 0.5);
  CHECK(r.tfidf_top.size() == 6);
  CHECK(r.tfidf_top[0].keyword == "graph");

  SubfieldReport none = subfield_pipeline(n, "99Z", o);
  CHECK(none.works_selected == 0);
  CHECK(none.wa.rows().size() == 0);
  CHECK_FALSE(none.bias);
  CHECK(none.coclassification.empty());

  SubfieldReport all = subfield_pipeline(n, "", o);
  CHECK(all.works_selected == 12);
  CHECK(all.wa == n.wa);
  CHECK(all.wm == n.wm);
}
