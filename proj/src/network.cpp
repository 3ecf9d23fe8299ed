#include "zbnet/network.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "zbnet/errors.hpp"

namespace zbnet {

namespace {

std::atomic<unsigned> g_threads{1};

constexpr std::string_view kRoleNames[] = {"works", "authors", "journals", "keywords", "mscs", "shrunk"};

void check_weight(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw Error("arc weight must be positive and finite");
}

// Applies f(value) -> new value to every stored entry.
template <class F>
SparseMatrix map_values(const SparseMatrix& m, F f) {
  std::vector<double> values = m.values();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k) values[k] = f(r, values[k]);
  }
  return SparseMatrix::from_csr(m.rows(), m.cols(), m.row_ptr(), m.col_idx(), std::move(values));
}

// Keeps the nodes flagged in `keep`; returns the new node set and old -> new map.
std::pair<NodeSetPtr, std::vector<std::int64_t>> restrict_nodes(const NodeSetPtr& nodes,
                                                                 const std::vector<bool>& keep) {
  std::vector<std::int64_t> map(nodes->size(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    if (!keep[i]) continue;
    map[i] = static_cast<std::int64_t>(labels.size());
    labels.push_back(nodes->label(static_cast<Index>(i)));
  }
  if (labels.size() == nodes->size()) return {nodes, std::move(map)};
  return {make_node_set(nodes->role(), std::move(labels)), std::move(map)};
}

NodeSetPtr class_nodes(const Partition& p, Role role) {
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < p.class_count(); ++c) labels.push_back(p.class_label(static_cast<int>(c)));
  return make_node_set(role, std::move(labels));
}

}  // namespace

std::string_view role_name(Role role) { return kRoleNames[static_cast<int>(role)]; }

std::optional<Role> role_from_name(std::string_view name) {
  for (int i = 0; i < 6; ++i)
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  return std::nullopt;
}

NodeSet::NodeSet(Role role, std::vector<std::string> labels) : role_(role), labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], static_cast<Index>(i)).second)
      throw Error("duplicate node label: " + labels_[i]);
  }
}

std::optional<Index> NodeSet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeSetPtr make_node_set(Role role, std::vector<std::string> labels) {
  return std::make_shared<const NodeSet>(role, std::move(labels));
}

bool same_nodes(const NodeSetPtr& a, const NodeSetPtr& b) { return a == b || (a && b && *a == *b); }

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_arcs(std::size_t rows, std::size_t cols, std::vector<Arc> arcs) {
  for (const Arc& a : arcs) {
    if (a.row >= rows || a.col >= cols) throw Error("arc endpoint out of range");
    check_weight(a.weight);
  }
  // Stable so duplicates add up in input order.
  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const Arc& x, const Arc& y) { return x.row != y.row ? x.row < y.row : x.col < y.col; });
  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(arcs.size());
  m.values_.reserve(arcs.size());
  std::size_t last_row = rows;
  for (const Arc& a : arcs) {
    if (a.row == last_row && m.col_idx_.back() == a.col) {
      m.values_.back() += a.weight;
      continue;
    }
    m.col_idx_.push_back(a.col);
    m.values_.push_back(a.weight);
    ++m.row_ptr_[a.row + 1];
    last_row = a.row;
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

SparseMatrix SparseMatrix::from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                                    std::vector<Index> col_idx, std::vector<double> values) {
  if (row_ptr.size() != rows + 1 || row_ptr.front() != 0 || row_ptr.back() != col_idx.size() ||
      values.size() != col_idx.size())
    throw Error("inconsistent CSR arrays");
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_ptr[r] > row_ptr[r + 1]) throw Error("CSR row pointers decrease");
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      if (col_idx[k] >= cols) throw Error("CSR column out of range");
      if (k > row_ptr[r] && col_idx[k] <= col_idx[k - 1]) throw Error("CSR columns not strictly increasing");
      check_weight(values[k]);
    }
  }
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto cols = row_cols(r);
  auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Index>(c));
  if (it == cols.end() || *it != c) return 0.0;
  return values_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<Arc> SparseMatrix::arcs() const {
  std::vector<Arc> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      out.push_back({static_cast<Index>(r), col_idx_[k], values_[k]});
  }
  return out;
}

double SparseMatrix::total_weight() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

SparseMatrix transpose(const SparseMatrix& m) {
  std::vector<std::size_t> ptr(m.cols() + 1, 0);
  for (Index c : m.col_idx()) ++ptr[c + 1];
  for (std::size_t c = 0; c < m.cols(); ++c) ptr[c + 1] += ptr[c];
  std::vector<Index> idx(m.nnz());
  std::vector<double> val(m.nnz());
  std::vector<std::size_t> next(ptr.begin(), ptr.end() - 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k) {
      std::size_t slot = next[m.col_idx()[k]]++;
      idx[slot] = static_cast<Index>(r);
      val[slot] = m.values()[k];
    }
  }
  return SparseMatrix::from_csr(m.cols(), m.rows(), std::move(ptr), std::move(idx), std::move(val));
}

void set_thread_count(unsigned threads) { g_threads = std::max(1u, threads); }
unsigned thread_count() { return g_threads; }

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, unsigned threads) {
  if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
  const std::size_t rows = a.rows();
  const std::size_t cols = b.cols();
  if (threads == 0) threads = thread_count();
  threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, rows / 64 + 1)));

  struct Block {
    std::size_t begin, end;
    std::vector<std::size_t> lengths;
    std::vector<Index> idx;
    std::vector<double> val;
  };
  std::vector<Block> blocks(threads);
  for (unsigned t = 0; t < threads; ++t) {
    blocks[t].begin = rows * t / threads;
    blocks[t].end = rows * (t + 1) / threads;
  }
  auto work = [&](Block& blk) {
    std::vector<double> acc(cols, 0.0);
    std::vector<char> seen(cols, 0);
    std::vector<Index> touched;
    for (std::size_t r = blk.begin; r < blk.end; ++r) {
      touched.clear();
      auto acols = a.row_cols(r);
      auto avals = a.row_values(r);
      for (std::size_t i = 0; i < acols.size(); ++i) {
        const double x = avals[i];
        auto bcols = b.row_cols(acols[i]);
        auto bvals = b.row_values(acols[i]);
        for (std::size_t j = 0; j < bcols.size(); ++j) {
          Index c = bcols[j];
          if (!seen[c]) {
            seen[c] = 1;
            touched.push_back(c);
          }
          acc[c] += x * bvals[j];
        }
      }
      std::sort(touched.begin(), touched.end());
      std::size_t kept = 0;
      for (Index c : touched) {
        // Positive inputs cannot cancel; a product may still underflow to zero.
        if (acc[c] > 0.0) {
          blk.idx.push_back(c);
          blk.val.push_back(acc[c]);
          ++kept;
        }
        acc[c] = 0.0;
        seen[c] = 0;
      }
      blk.lengths.push_back(kept);
    }
  };
  if (threads == 1) {
    work(blocks[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, std::ref(blocks[t]));
    for (auto& th : pool) th.join();
  }
  std::vector<std::size_t> ptr(rows + 1, 0);
  std::vector<Index> idx;
  std::vector<double> val;
  std::size_t total = 0;
  for (const Block& blk : blocks) total += blk.idx.size();
  idx.reserve(total);
  val.reserve(total);
  std::size_t r = 0;
  for (Block& blk : blocks) {
    for (std::size_t len : blk.lengths) {
      ptr[r + 1] = ptr[r] + len;
      ++r;
    }
    idx.insert(idx.end(), blk.idx.begin(), blk.idx.end());
    val.insert(val.end(), blk.val.begin(), blk.val.end());
  }
  return SparseMatrix::from_csr(rows, cols, std::move(ptr), std::move(idx), std::move(val));
}

TwoModeNetwork::TwoModeNetwork(NodeSetPtr rows, NodeSetPtr cols, SparseMatrix matrix)
    : rows_(std::move(rows)), cols_(std::move(cols)), matrix_(std::move(matrix)) {
  if (!rows_ || !cols_) throw Error("two-mode network needs both node sets");
  if (matrix_.rows() != rows_->size() || matrix_.cols() != cols_->size())
    throw DimensionMismatch("matrix shape does not match node sets");
  if (rows_->role() == cols_->role()) throw Error("two-mode network needs two different node roles");
}

bool TwoModeNetwork::operator==(const TwoModeNetwork& other) const {
  return same_nodes(rows_, other.rows_) && same_nodes(cols_, other.cols_) && matrix_ == other.matrix_;
}

OneModeNetwork::OneModeNetwork(NodeSetPtr nodes, SparseMatrix matrix, OneModeKind kind)
    : nodes_(std::move(nodes)), matrix_(std::move(matrix)), kind_(kind) {
  if (!nodes_) throw Error("one-mode network needs a node set");
  if (matrix_.rows() != nodes_->size() || matrix_.cols() != nodes_->size())
    throw DimensionMismatch("matrix shape does not match node set");
  if (kind_ == OneModeKind::Undirected) {
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
      for (Index c : matrix_.row_cols(r))
        if (c <= r) throw Error("undirected network must store edges as (u, v) with u < v");
    }
  }
}

double OneModeNetwork::weight(Index u, Index v) const {
  if (kind_ == OneModeKind::Undirected && u > v) std::swap(u, v);
  return matrix_.at(u, v);
}

bool OneModeNetwork::operator==(const OneModeNetwork& other) const {
  return kind_ == other.kind_ && same_nodes(nodes_, other.nodes_) && matrix_ == other.matrix_;
}

Partition::Partition(NodeSetPtr nodes, std::vector<int> cls, std::vector<std::string> labels)
    : over(std::move(nodes)), classes(std::move(cls)), class_labels(std::move(labels)) {
  if (!over) throw Error("partition needs a node set");
  if (classes.size() != over->size()) throw DimensionMismatch("partition size does not match node set");
  for (int c : classes) {
    if (c < 0) throw Error("partition classes must be non-negative");
    if (!class_labels.empty() && static_cast<std::size_t>(c) >= class_labels.size())
      throw Error("partition class without a label");
  }
}

std::size_t Partition::class_count() const {
  if (!class_labels.empty()) return class_labels.size();
  int top = -1;
  for (int c : classes) top = std::max(top, c);
  return static_cast<std::size_t>(top + 1);
}

std::string Partition::class_label(int c) const {
  if (!class_labels.empty()) return class_labels.at(static_cast<std::size_t>(c));
  return std::to_string(c);
}

bool Partition::operator==(const Partition& other) const {
  return same_nodes(over, other.over) && classes == other.classes && class_labels == other.class_labels;
}

Partition prefix_partition(const NodeSetPtr& nodes, std::size_t length) {
  std::map<std::string, int> ids;
  for (const std::string& l : nodes->labels()) ids.emplace(l.substr(0, length), 0);
  std::vector<std::string> labels;
  for (auto& [prefix, id] : ids) {
    id = static_cast<int>(labels.size());
    labels.push_back(prefix);
  }
  std::vector<int> classes;
  classes.reserve(nodes->size());
  for (const std::string& l : nodes->labels()) classes.push_back(ids.at(l.substr(0, length)));
  return Partition(nodes, std::move(classes), std::move(labels));
}

Partition constant_partition(const NodeSetPtr& nodes, std::string label) {
  return Partition(nodes, std::vector<int>(nodes->size(), 0), {std::move(label)});
}

NodeVector::NodeVector(NodeSetPtr nodes, std::vector<double> vals) : over(std::move(nodes)), values(std::move(vals)) {
  if (!over) throw Error("vector needs a node set");
  if (values.size() != over->size()) throw DimensionMismatch("vector size does not match node set");
}

bool NodeVector::operator==(const NodeVector& other) const {
  return same_nodes(over, other.over) && values == other.values;
}

TwoModeNetwork transpose(const TwoModeNetwork& n) {
  return TwoModeNetwork(n.cols_ptr(), n.rows_ptr(), transpose(n.matrix()));
}

OneModeNetwork transpose(const OneModeNetwork& n) {
  if (!n.directed()) return n;
  return OneModeNetwork(n.nodes_ptr(), transpose(n.matrix()), OneModeKind::Directed);
}

TwoModeNetwork multiply(const TwoModeNetwork& a, const TwoModeNetwork& b, unsigned threads) {
  if (!same_nodes(a.cols_ptr(), b.rows_ptr())) throw DimensionMismatch("middle node sets differ");
  if (same_nodes(a.rows_ptr(), b.cols_ptr())) throw Error("outer node sets coincide; use multiply_square");
  return TwoModeNetwork(a.rows_ptr(), b.cols_ptr(), multiply(a.matrix(), b.matrix(), threads));
}

OneModeNetwork multiply_square(const TwoModeNetwork& a, const TwoModeNetwork& b, unsigned threads) {
  if (!same_nodes(a.cols_ptr(), b.rows_ptr())) throw DimensionMismatch("middle node sets differ");
  if (!same_nodes(a.rows_ptr(), b.cols_ptr())) throw DimensionMismatch("outer node sets differ");
  return OneModeNetwork(a.rows_ptr(), multiply(a.matrix(), b.matrix(), threads), OneModeKind::Directed);
}

TwoModeNetwork binarize(const TwoModeNetwork& n) {
  return TwoModeNetwork(n.rows_ptr(), n.cols_ptr(), map_values(n.matrix(), [](std::size_t, double) { return 1.0; }));
}

OneModeNetwork binarize(const OneModeNetwork& n) {
  return OneModeNetwork(n.nodes_ptr(), map_values(n.matrix(), [](std::size_t, double) { return 1.0; }), n.kind());
}

TwoModeNetwork row_normalize(const TwoModeNetwork& n, RowNorm mode) {
  const SparseMatrix& m = n.matrix();
  std::vector<double> scale(m.rows(), 1.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double d = 0.0;
    switch (mode) {
      case RowNorm::ByOutdeg:
        d = static_cast<double>(m.row_size(r));
        break;
      case RowNorm::ByOutdegMinus1:
        d = static_cast<double>(m.row_size(r)) - 1.0;
        break;
      case RowNorm::ByWeightedOutdeg:
        for (double v : m.row_values(r)) d += v;
        break;
    }
    scale[r] = std::max(1.0, d);
  }
  return TwoModeNetwork(n.rows_ptr(), n.cols_ptr(),
                        map_values(m, [&](std::size_t r, double v) { return v / scale[r]; }));
}

TwoModeNetwork shrink_rows(const TwoModeNetwork& n, const Partition& p, Role role) {
  if (!same_nodes(p.over, n.rows_ptr())) throw DimensionMismatch("partition is not over the rows");
  NodeSetPtr merged = class_nodes(p, role);
  std::vector<Arc> arcs;
  arcs.reserve(n.arc_count());
  for (const Arc& a : n.matrix().arcs()) arcs.push_back({static_cast<Index>(p.class_of(a.row)), a.col, a.weight});
  return TwoModeNetwork(merged, n.cols_ptr(),
                        SparseMatrix::from_arcs(merged->size(), n.cols().size(), std::move(arcs)));
}

TwoModeNetwork shrink_cols(const TwoModeNetwork& n, const Partition& p, Role role) {
  if (!same_nodes(p.over, n.cols_ptr())) throw DimensionMismatch("partition is not over the columns");
  NodeSetPtr merged = class_nodes(p, role);
  std::vector<Arc> arcs;
  arcs.reserve(n.arc_count());
  for (const Arc& a : n.matrix().arcs()) arcs.push_back({a.row, static_cast<Index>(p.class_of(a.col)), a.weight});
  return TwoModeNetwork(n.rows_ptr(), merged,
                        SparseMatrix::from_arcs(n.rows().size(), merged->size(), std::move(arcs)));
}

TwoModeNetwork extract_subnetwork(const TwoModeNetwork& n, const ExtractOptions& o) {
  auto selected = [](const Partition* p, const std::set<int>& classes, const NodeSetPtr& nodes) {
    std::vector<bool> keep(nodes->size(), true);
    if (p == nullptr) return keep;
    if (!same_nodes(p->over, nodes)) throw DimensionMismatch("partition is not over the network nodes");
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = classes.count(p->classes[i]) != 0;
    return keep;
  };
  std::vector<bool> keep_rows = selected(o.row_partition, o.row_classes, n.rows_ptr());
  std::vector<bool> keep_cols = selected(o.col_partition, o.col_classes, n.cols_ptr());
  const SparseMatrix& m = n.matrix();
  if (o.drop_empty_rows || o.drop_empty_cols) {
    std::vector<bool> row_used(m.rows(), false);
    std::vector<bool> col_used(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!keep_rows[r]) continue;
      for (Index c : m.row_cols(r)) {
        if (!keep_cols[c]) continue;
        row_used[r] = true;
        col_used[c] = true;
      }
    }
    if (o.drop_empty_rows) keep_rows = row_used;
    if (o.drop_empty_cols) keep_cols = col_used;
  }
  auto [rows, row_map] = restrict_nodes(n.rows_ptr(), keep_rows);
  auto [cols, col_map] = restrict_nodes(n.cols_ptr(), keep_cols);
  std::vector<Arc> arcs;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (row_map[r] < 0) continue;
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (col_map[cs[k]] < 0) continue;
      arcs.push_back({static_cast<Index>(row_map[r]), static_cast<Index>(col_map[cs[k]]), vs[k]});
    }
  }
  return TwoModeNetwork(rows, cols, SparseMatrix::from_arcs(rows->size(), cols->size(), std::move(arcs)));
}

OneModeNetwork induced_subnetwork(const OneModeNetwork& n, const std::vector<bool>& keep) {
  if (keep.size() != n.nodes().size()) throw DimensionMismatch("selection size does not match node set");
  auto [nodes, map] = restrict_nodes(n.nodes_ptr(), keep);
  std::vector<Arc> arcs;
  for (const Arc& a : n.matrix().arcs()) {
    if (map[a.row] >= 0 && map[a.col] >= 0)
      arcs.push_back({static_cast<Index>(map[a.row]), static_cast<Index>(map[a.col]), a.weight});
  }
  return OneModeNetwork(nodes, SparseMatrix::from_arcs(nodes->size(), nodes->size(), std::move(arcs)), n.kind());
}

OneModeNetwork symmetrize_drop_diagonal(const OneModeNetwork& n) {
  std::vector<Arc> arcs;
  arcs.reserve(n.link_count());
  for (const Arc& a : n.matrix().arcs()) {
    if (a.row == a.col) continue;
    arcs.push_back({std::min(a.row, a.col), std::max(a.row, a.col), a.weight});
  }
  const std::size_t size = n.nodes().size();
  return OneModeNetwork(n.nodes_ptr(), SparseMatrix::from_arcs(size, size, std::move(arcs)), OneModeKind::Undirected);
}

NodeVector degrees(const TwoModeNetwork& n, Side side, bool weighted) {
  const SparseMatrix& m = n.matrix();
  std::vector<double> d(side == Side::Rows ? m.rows() : m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) d[side == Side::Rows ? r : cs[k]] += weighted ? vs[k] : 1.0;
  }
  return NodeVector(side == Side::Rows ? n.rows_ptr() : n.cols_ptr(), std::move(d));
}

NodeVector degrees(const OneModeNetwork& n, bool weighted) {
  const SparseMatrix& m = n.matrix();
  std::vector<double> d(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      double w = weighted ? vs[k] : 1.0;
      d[r] += w;
      if (!n.directed()) d[cs[k]] += w;
    }
  }
  return NodeVector(n.nodes_ptr(), std::move(d));
}

}  // namespace zbnet
