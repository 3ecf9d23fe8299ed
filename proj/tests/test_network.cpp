#include <random>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"
#include "zbnet/errors.hpp"
#include "zbnet/network.hpp"
#include "zbnet/pajek.hpp"

using namespace zbnet;
using zbtest::Dense;

namespace {

TwoModeNetwork small_wa(std::vector<Arc> arcs, std::size_t works, std::size_t authors) {
  return TwoModeNetwork(make_node_set(Role::Works, zbtest::numbered("w", works)),
                        make_node_set(Role::Authors, zbtest::numbered("a", authors)),
                        SparseMatrix::from_arcs(works, authors, std::move(arcs)));
}

template <class Net>
std::string pajek_text(const Net& n) {
  std::ostringstream ss;
  write_pajek(ss, n);
  return ss.str();
}

}  // namespace

TEST_CASE("from_arcs sums duplicates and validates weights") {
  SparseMatrix m = SparseMatrix::from_arcs(2, 3, {{1, 2, 1.0}, {0, 1, 2.0}, {1, 2, 0.5}});
  CHECK(m.nnz() == 2);
  CHECK(m.at(1, 2) == 1.5);
  CHECK(m.at(0, 0) == 0.0);
  CHECK_THROWS_AS(SparseMatrix::from_arcs(2, 2, {{0, 0, 0.0}}), Error);
  CHECK_THROWS_AS(SparseMatrix::from_arcs(2, 2, {{0, 0, -1.0}}), Error);
  CHECK_THROWS_AS(SparseMatrix::from_arcs(2, 2, {{0, 2, 1.0}}), Error);
  CHECK_THROWS_AS(SparseMatrix::from_csr(1, 2, {0, 2}, {1, 0}, {1.0, 1.0}), Error);
}

TEST_CASE("network construction checks") {
  auto w = make_node_set(Role::Works, {"w1"});
  auto a = make_node_set(Role::Authors, {"a1", "a2"});
  CHECK_THROWS_AS(TwoModeNetwork(w, a, SparseMatrix(1, 3)), DimensionMismatch);
  CHECK_THROWS_AS(TwoModeNetwork(w, w, SparseMatrix(1, 1)), Error);
  CHECK_THROWS_AS(make_node_set(Role::Works, {"x", "x"}), Error);
  CHECK_THROWS_AS(OneModeNetwork(a, SparseMatrix::from_arcs(2, 2, {{1, 0, 1.0}}), OneModeKind::Undirected), Error);
}

TEST_CASE("transpose of a WA arc") {
  TwoModeNetwork wa = small_wa({{0, 1, 1.0}}, 1, 2);
  TwoModeNetwork aw = transpose(wa);
  CHECK(aw.rows().role() == Role::Authors);
  CHECK(aw.matrix().arcs() == std::vector<Arc>{{1, 0, 1.0}});
  CHECK(transpose(aw) == wa);
}

TEST_CASE("co-authorship of one two-author work") {
  TwoModeNetwork wa = small_wa({{0, 0, 1.0}, {0, 1, 1.0}}, 1, 2);
  OneModeNetwork co = multiply_square(transpose(wa), wa);
  CHECK(co.directed());
  CHECK(co.matrix().arcs() == std::vector<Arc>{{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  TwoModeNetwork empty = small_wa({}, 1, 2);
  CHECK(multiply_square(transpose(wa), empty).link_count() == 0);
  CHECK_THROWS_AS(multiply(transpose(wa), wa), Error);
  CHECK_THROWS_AS(multiply(wa, wa), DimensionMismatch);
}

TEST_CASE("binarize, row_normalize and shrink examples") {
  TwoModeNetwork n = small_wa({{0, 0, 3.0}, {1, 0, 1.0}, {1, 1, 1.0}}, 3, 2);
  TwoModeNetwork b = binarize(n);
  CHECK(b.matrix().at(0, 0) == 1.0);
  CHECK(binarize(b) == b);
  CHECK(binarize(small_wa({}, 1, 1)).arc_count() == 0);

  TwoModeNetwork by_deg = row_normalize(n, RowNorm::ByOutdeg);
  CHECK(by_deg.matrix().at(1, 0) == 0.5);
  CHECK(by_deg.matrix().at(1, 1) == 0.5);
  TwoModeNetwork minus1 = row_normalize(n, RowNorm::ByOutdegMinus1);
  CHECK(minus1.matrix().at(0, 0) == 3.0);
  CHECK(minus1.matrix().at(1, 0) == 1.0);
  TwoModeNetwork weighted = row_normalize(n, RowNorm::ByWeightedOutdeg);
  CHECK(weighted.matrix().at(0, 0) == 1.0);

  auto works = make_node_set(Role::Works, {"w"});
  auto mscs = make_node_set(Role::MSCs, {"05C35", "05C38", "11A05"});
  TwoModeNetwork wm(works, mscs, SparseMatrix::from_arcs(1, 3, {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 1.0}}));
  TwoModeNetwork wm3 = shrink_cols(wm, prefix_partition(mscs, 3), Role::MSCs);
  CHECK(wm3.cols().labels() == std::vector<std::string>{"05C", "11A"});
  CHECK(wm3.matrix().arcs() == std::vector<Arc>{{0, 0, 2.0}, {0, 1, 1.0}});
  Partition identity(mscs, {0, 1, 2}, mscs->labels());
  CHECK(shrink_cols(wm, identity, Role::MSCs).matrix() == wm.matrix());
}

TEST_CASE("extract_subnetwork selections") {
  std::mt19937_64 rng(1);
  TwoModeNetwork n = zbtest::random_two_mode(rng, Role::Works, 6, Role::MSCs, 5, 0.5, true);
  Partition rows(n.rows_ptr(), {0, 1, 0, 1, 0, 1});
  ExtractOptions all;
  all.row_partition = &rows;
  all.row_classes = {0, 1};
  TwoModeNetwork same = extract_subnetwork(n, all);
  CHECK(same == n);
  CHECK(same.rows_ptr() == n.rows_ptr());
  ExtractOptions none = all;
  none.row_classes = {};
  CHECK(extract_subnetwork(n, none).rows().size() == 0);
  ExtractOptions odd = all;
  odd.row_classes = {1};
  TwoModeNetwork sub = extract_subnetwork(n, odd);
  CHECK(sub.rows().labels() == std::vector<std::string>{"r2", "r4", "r6"});
  for (Index r = 0; r < 3; ++r)
    for (Index c = 0; c < 5; ++c) CHECK(sub.matrix().at(r, c) == n.matrix().at(2 * r + 1, c));
}

TEST_CASE("symmetrize_drop_diagonal") {
  auto nodes = make_node_set(Role::Authors, {"a", "b"});
  OneModeNetwork d(nodes, SparseMatrix::from_arcs(2, 2, {{0, 1, 0.3}, {1, 0, 0.3}, {0, 0, 5.0}}),
                   OneModeKind::Directed);
  OneModeNetwork u = symmetrize_drop_diagonal(d);
  CHECK_FALSE(u.directed());
  CHECK(u.weight(1, 0) == doctest::Approx(0.6).epsilon(1e-15));
  OneModeNetwork loops(nodes, SparseMatrix::from_arcs(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}}), OneModeKind::Directed);
  CHECK(symmetrize_drop_diagonal(loops).link_count() == 0);
}

TEST_CASE("degrees") {
  TwoModeNetwork n = small_wa({{0, 0, 0.5}, {0, 1, 0.5}, {0, 2, 1.0}}, 1, 3);
  CHECK(degrees(n, Side::Rows, false).values == std::vector<double>{3.0});
  CHECK(degrees(n, Side::Rows, true).values == std::vector<double>{2.0});
  CHECK(degrees(n, Side::Cols, false).values == std::vector<double>{1.0, 1.0, 1.0});
  auto nodes = make_node_set(Role::Authors, {"a", "b", "c"});
  OneModeNetwork u(nodes, SparseMatrix::from_arcs(3, 3, {{0, 1, 2.0}, {1, 2, 1.0}}), OneModeKind::Undirected);
  CHECK(degrees(u, false).values == std::vector<double>{1.0, 2.0, 1.0});
  CHECK(degrees(u, true).values == std::vector<double>{2.0, 3.0, 1.0});
}

TEST_CASE("algebra agrees with dense oracles on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  std::uniform_real_distribution<double> dens(0.0, 0.6);
  for (int trial = 0; trial < 120; ++trial) {
    bool integer = trial % 2 == 0;
    std::size_t x = dim(rng), y = dim(rng), z = dim(rng);
    TwoModeNetwork a = zbtest::random_two_mode(rng, Role::Works, x, Role::Authors, y, dens(rng), integer);
    TwoModeNetwork b = zbtest::random_two_mode(rng, Role::Authors, y, Role::Keywords, z, dens(rng), integer);
    TwoModeNetwork b_rows_shared(a.cols_ptr(), b.cols_ptr(), b.matrix());
    Dense da = zbtest::to_dense(a.matrix()), db = zbtest::to_dense(b.matrix());
    Dense expected = zbtest::dense_multiply(da, db, y, z);
    for (unsigned threads : {1u, 3u}) {
      Dense got = zbtest::to_dense(multiply(a, b_rows_shared, threads).matrix());
      if (integer) {
        CHECK(got == expected);
      } else {
        CHECK(zbtest::dense_distance(got, expected) <= 1e-12);
      }
    }
    CHECK(multiply(a, b_rows_shared, 1).matrix() == multiply(a, b_rows_shared, 4).matrix());
    // (A B)^T == B^T A^T
    CHECK(transpose(multiply(a, b_rows_shared)).matrix() == multiply(transpose(b_rows_shared), transpose(a)).matrix());
    CHECK(zbtest::to_dense(transpose(a).matrix()) == zbtest::dense_transpose(da, y));
    CHECK(transpose(transpose(a)) == a);
    CHECK(binarize(binarize(a)) == binarize(a));

    TwoModeNetwork norm = row_normalize(a, RowNorm::ByWeightedOutdeg);
    TwoModeNetwork unit = row_normalize(binarize(a), RowNorm::ByOutdeg);
    TwoModeNetwork by_deg = row_normalize(a, RowNorm::ByOutdeg);
    for (std::size_t r = 0; r < x; ++r) {
      double total = 0.0, sum = 0.0, unit_sum = 0.0;
      for (double v : a.matrix().row_values(r)) total += v;
      for (double v : norm.matrix().row_values(r)) sum += v;
      for (double v : unit.matrix().row_values(r)) unit_sum += v;
      if (a.matrix().row_size(r) == 0) continue;
      CHECK(std::abs(unit_sum - 1.0) <= 1e-12);
      // integer weights give a weighted degree of at least 1
      if (integer) CHECK(std::abs(sum - 1.0) <= 1e-12);
      double k = static_cast<double>(a.matrix().row_size(r));
      for (std::size_t i = 0; i < a.matrix().row_size(r); ++i) {
        CHECK(by_deg.matrix().row_values(r)[i] == a.matrix().row_values(r)[i] / k);
        CHECK(norm.matrix().row_values(r)[i] == a.matrix().row_values(r)[i] / std::max(1.0, total));
      }
    }

    std::uniform_int_distribution<int> cls(0, 2);
    std::vector<int> classes(y);
    for (int& c : classes) c = cls(rng);
    Partition p(a.cols_ptr(), classes);
    TwoModeNetwork shrunk = shrink_cols(a, p);
    CHECK(std::abs(shrunk.matrix().total_weight() - a.matrix().total_weight()) <= 1e-12 * std::max(1.0, a.matrix().total_weight()));
    Dense ds(x, std::vector<double>(p.class_count(), 0.0));
    for (std::size_t r = 0; r < x; ++r)
      for (std::size_t c = 0; c < y; ++c) ds[r][classes[c]] += da[r][c];
    CHECK(zbtest::dense_distance(zbtest::to_dense(shrunk.matrix()), ds) <= 1e-12);
  }
}

TEST_CASE("arc insertion order does not change a network") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    SparseMatrix m = zbtest::random_matrix(rng, 7, 9, 0.4, false);
    std::vector<Arc> arcs = m.arcs();
    std::shuffle(arcs.begin(), arcs.end(), rng);
    CHECK(SparseMatrix::from_arcs(7, 9, arcs) == m);
  }
}

TEST_CASE("pajek round trip of a two-node network") {
  auto nodes = make_node_set(Role::Authors, {"a \"quoted\"", "b\\c"});
  OneModeNetwork g(nodes, SparseMatrix::from_arcs(2, 2, {{0, 1, 0.1}}), OneModeKind::Undirected);
  std::string text = pajek_text(g);
  CHECK(text == "*Vertices 2\n% zbnet one-mode authors\n1 \"a \\\"quoted\\\"\"\n2 \"b\\\\c\"\n*Edges\n1 2 0.1\n");
  std::istringstream in(text);
  CHECK(read_one_mode(in) == g);
}

TEST_CASE("pajek two-mode layout and partitions") {
  TwoModeNetwork wa = small_wa({{0, 1, 1.0}, {1, 0, 2.5}}, 2, 2);
  std::string text = pajek_text(wa);
  CHECK(text == "*Vertices 4 2\n% zbnet two-mode works authors\n1 \"w1\"\n2 \"w2\"\n3 \"a1\"\n4 \"a2\"\n*Arcs\n1 4 1\n2 3 2.5\n");
  CHECK(pajek_text(wa) == text);
  std::istringstream in(text);
  CHECK(read_two_mode(in) == wa);

  auto nodes = make_node_set(Role::Works, {"x", "y", "z"});
  std::istringstream clu("*Vertices 3\n2\n0\n2\n");
  Partition p = read_partition(clu, nodes);
  CHECK(p.classes == std::vector<int>{2, 0, 2});
  std::ostringstream out;
  write_partition(out, p);
  CHECK(out.str() == "*Vertices 3\n2\n0\n2\n");

  NodeVector v(nodes, {0.5, 1.0, 2.0 / 3.0});
  std::ostringstream vec;
  write_vector(vec, v);
  std::istringstream vin(vec.str());
  CHECK(read_vector(vin, nodes) == v);
}

TEST_CASE("pajek reader accepts foreign files and reports syntax errors with lines") {
  std::istringstream plain("*Network demo\n*vertices 3\n1 \"a\"\n2 \"b\"\n3\n*edges\n1 2 2\n2 3\n1 2 1\n");
  OneModeNetwork g = read_one_mode(plain);
  CHECK_FALSE(g.directed());
  CHECK(g.nodes().label(2) == "3");
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(2, 1) == 1.0);

  std::istringstream bad_id("*Vertices 2\n*Arcs\n1 3 1\n");
  try {
    read_pajek(bad_id);
    FAIL("expected a syntax error");
  } catch (const PajekSyntaxError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad_weight("*Vertices 2\n*Arcs\n1 2 0\n");
  CHECK_THROWS_AS(read_pajek(bad_weight), PajekSyntaxError);
  std::istringstream bad_section("*Vertices 2\n*Matrix\n");
  CHECK_THROWS_AS(read_pajek(bad_section), PajekSyntaxError);
  std::istringstream loop_edge("*Vertices 2\n*Edges\n1 1 1\n");
  CHECK_THROWS_AS(read_pajek(loop_edge), PajekSyntaxError);
}

TEST_CASE("pajek round trip on random networks") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    if (trial % 2 == 0) {
      TwoModeNetwork n = zbtest::random_two_mode(rng, Role::Works, 1 + trial % 9, Role::Keywords, 1 + trial % 7, 0.4,
                                                 trial % 4 == 0);
      std::istringstream in(pajek_text(n));
      CHECK(read_two_mode(in) == n);
    } else {
      OneModeNetwork g = zbtest::random_undirected(rng, 1 + trial % 11, 0.4, trial % 3 == 0 ? 3 : 0);
      std::istringstream in(pajek_text(g));
      CHECK(read_one_mode(in) == g);
    }
  }
}
