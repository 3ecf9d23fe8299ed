#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zbnet {

using Index = std::uint32_t;

enum class Role { Works, Authors, Journals, Keywords, MSCs, Shrunk };

std::string_view role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

/// Ordered set of unique node labels.
class NodeSet {
 public:
  /// Throws Error on a duplicate label.
  NodeSet(Role role, std::vector<std::string> labels);

  Role role() const { return role_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(Index i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Index> find(std::string_view label) const;

  bool operator==(const NodeSet& other) const { return role_ == other.role_ && labels_ == other.labels_; }

 private:
  Role role_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> index_;
};

using NodeSetPtr = std::shared_ptr<const NodeSet>;

NodeSetPtr make_node_set(Role role, std::vector<std::string> labels);

/// Same object or equal content.
bool same_nodes(const NodeSetPtr& a, const NodeSetPtr& b);

struct Arc {
  Index row;
  Index col;
  double weight;

  bool operator==(const Arc&) const = default;
};

/// Compressed sparse rows, column indices strictly increasing within a row, all
/// stored values positive and finite.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Sums duplicate (row, col) pairs. Throws Error on out-of-range indices or a
  /// weight that is not positive and finite.
  static SparseMatrix from_arcs(std::size_t rows, std::size_t cols, std::vector<Arc> arcs);

  /// Takes ready CSR arrays; throws Error when they break the invariants.
  static SparseMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                               std::vector<Index> col_idx, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return col_idx_.size(); }

  std::span<const Index> row_cols(std::size_t r) const {
    return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::size_t row_size(std::size_t r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  /// 0 when the entry is absent.
  double at(std::size_t r, std::size_t c) const;
  std::vector<Arc> arcs() const;
  double total_weight() const;

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

SparseMatrix transpose(const SparseMatrix& m);

/// Row-parallel Gustavson product. Each row accumulates in a fixed order, so the
/// result does not depend on the thread count.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, unsigned threads = 0);

/// Threads used when an operation is called with threads == 0. Defaults to 1.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Directed bipartite network rows -> cols.
class TwoModeNetwork {
 public:
  /// Throws DimensionMismatch when the matrix shape disagrees with the node sets and
  /// Error when both sides share a role.
  TwoModeNetwork(NodeSetPtr rows, NodeSetPtr cols, SparseMatrix matrix);

  const NodeSet& rows() const { return *rows_; }
  const NodeSet& cols() const { return *cols_; }
  const NodeSetPtr& rows_ptr() const { return rows_; }
  const NodeSetPtr& cols_ptr() const { return cols_; }
  const SparseMatrix& matrix() const { return matrix_; }
  std::size_t arc_count() const { return matrix_.nnz(); }

  bool operator==(const TwoModeNetwork& other) const;

 private:
  NodeSetPtr rows_;
  NodeSetPtr cols_;
  SparseMatrix matrix_;
};

enum class OneModeKind { Directed, Undirected };

/// Directed networks may carry loops. Undirected ones keep each edge once as
/// (u, v) with u < v and never hold loops.
class OneModeNetwork {
 public:
  OneModeNetwork(NodeSetPtr nodes, SparseMatrix matrix, OneModeKind kind);

  const NodeSet& nodes() const { return *nodes_; }
  const NodeSetPtr& nodes_ptr() const { return nodes_; }
  const SparseMatrix& matrix() const { return matrix_; }
  OneModeKind kind() const { return kind_; }
  bool directed() const { return kind_ == OneModeKind::Directed; }
  std::size_t link_count() const { return matrix_.nnz(); }

  /// Weight of (u, v); for undirected networks the order of u and v is irrelevant.
  double weight(Index u, Index v) const;

  bool operator==(const OneModeNetwork& other) const;

 private:
  NodeSetPtr nodes_;
  SparseMatrix matrix_;
  OneModeKind kind_;
};

/// Class per node. Classes are non-negative; `class_labels`, when not empty, names
/// classes 0..size-1.
struct Partition {
  NodeSetPtr over;
  std::vector<int> classes;
  std::vector<std::string> class_labels;

  Partition(NodeSetPtr nodes, std::vector<int> classes, std::vector<std::string> class_labels = {});

  int class_of(Index node) const { return classes[node]; }
  std::size_t class_count() const;
  std::string class_label(int c) const;

  bool operator==(const Partition& other) const;
};

/// Groups labels by their first `length` characters; classes follow the sorted order
/// of the prefixes.
Partition prefix_partition(const NodeSetPtr& nodes, std::size_t length);

/// Every node in one class named `label`.
Partition constant_partition(const NodeSetPtr& nodes, std::string label);

struct NodeVector {
  NodeSetPtr over;
  std::vector<double> values;

  NodeVector(NodeSetPtr nodes, std::vector<double> values);

  bool operator==(const NodeVector& other) const;
};

TwoModeNetwork transpose(const TwoModeNetwork& n);
OneModeNetwork transpose(const OneModeNetwork& n);

/// Product over the shared middle node set. Throws DimensionMismatch when a.cols and
/// b.rows differ, and Error when the outer sets coincide (use multiply_square).
TwoModeNetwork multiply(const TwoModeNetwork& a, const TwoModeNetwork& b, unsigned threads = 0);

/// Product whose outer node sets coincide: a directed network with loops.
OneModeNetwork multiply_square(const TwoModeNetwork& a, const TwoModeNetwork& b, unsigned threads = 0);

TwoModeNetwork binarize(const TwoModeNetwork& n);
OneModeNetwork binarize(const OneModeNetwork& n);

enum class RowNorm { ByOutdeg, ByOutdegMinus1, ByWeightedOutdeg };

/// Scales each row by 1 / max(1, d).
TwoModeNetwork row_normalize(const TwoModeNetwork& n, RowNorm mode);

/// Merges nodes of one side by class; parallel arcs add up. The merged side gets one
/// node per class, labelled by the partition's class labels.
TwoModeNetwork shrink_rows(const TwoModeNetwork& n, const Partition& p, Role role = Role::Shrunk);
TwoModeNetwork shrink_cols(const TwoModeNetwork& n, const Partition& p, Role role = Role::Shrunk);

struct ExtractOptions {
  const Partition* row_partition = nullptr;  // null keeps every row
  std::set<int> row_classes;
  const Partition* col_partition = nullptr;
  std::set<int> col_classes;
  bool drop_empty_rows = false;
  bool drop_empty_cols = false;
};

/// Restricts both sides to the selected classes. A side that loses no node keeps
/// its node set object.
TwoModeNetwork extract_subnetwork(const TwoModeNetwork& n, const ExtractOptions& options);

/// Keeps the nodes with keep[i] true.
OneModeNetwork induced_subnetwork(const OneModeNetwork& n, const std::vector<bool>& keep);

/// weight{u,v} = N(u,v) + N(v,u) for u != v.
OneModeNetwork symmetrize_drop_diagonal(const OneModeNetwork& n);

enum class Side { Rows, Cols };

NodeVector degrees(const TwoModeNetwork& n, Side side, bool weighted);

/// Out-degrees of a directed network; for undirected ones every edge counts at both ends.
NodeVector degrees(const OneModeNetwork& n, bool weighted);

}  // namespace zbnet
