#include "zbnet/cores.hpp"

#include <functional>
#include <queue>

#include "zbnet/errors.hpp"

namespace zbnet {

namespace {

struct Adjacency {
  std::vector<std::size_t> ptr;
  std::vector<Index> nbr;
  std::vector<double> w;
};

Adjacency symmetric_adjacency(const SparseMatrix& m) {
  const std::size_t n = m.rows();
  Adjacency adj;
  adj.ptr.assign(n + 1, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (Index c : m.row_cols(r)) {
      ++adj.ptr[r + 1];
      ++adj.ptr[c + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) adj.ptr[i + 1] += adj.ptr[i];
  adj.nbr.resize(adj.ptr[n]);
  adj.w.resize(adj.ptr[n]);
  std::vector<std::size_t> next(adj.ptr.begin(), adj.ptr.end() - 1);
  for (std::size_t r = 0; r < n; ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      adj.nbr[next[r]] = cs[k];
      adj.w[next[r]++] = vs[k];
      adj.nbr[next[cs[k]]] = static_cast<Index>(r);
      adj.w[next[cs[k]]++] = vs[k];
    }
  }
  return adj;
}

}  // namespace

CoreResult ps_core(const OneModeNetwork& g, double t) {
  if (g.directed()) throw Error("pS-core needs an undirected network");
  if (!(t >= 0.0)) throw Error("core level must be non-negative");
  const std::size_t n = g.nodes().size();
  Adjacency adj = symmetric_adjacency(g.matrix());
  std::vector<bool> removed(n, false);

  // Exact p over the surviving neighbours, summed in adjacency order.
  auto exact_p = [&](Index v) {
    double s = 0.0;
    for (std::size_t k = adj.ptr[v]; k < adj.ptr[v + 1]; ++k)
      if (!removed[adj.nbr[k]]) s += adj.w[k];
    return s;
  };

  std::vector<double> p(n);
  using Entry = std::pair<double, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Index v = 0; v < n; ++v) {
    p[v] = exact_p(v);
    heap.push({p[v], v});
  }
  auto drain = [&] {
    while (!heap.empty()) {
      auto [pv, v] = heap.top();
      if (pv >= t) break;
      heap.pop();
      if (removed[v] || pv != p[v]) continue;
      double exact = exact_p(v);
      if (exact >= t) {
        p[v] = exact;
        heap.push({exact, v});
        continue;
      }
      removed[v] = true;
      for (std::size_t k = adj.ptr[v]; k < adj.ptr[v + 1]; ++k) {
        Index u = adj.nbr[k];
        if (removed[u]) continue;
        p[u] -= adj.w[k];
        heap.push({p[u], u});
      }
    }
  };
  drain();
  // Incremental updates can drift; settle with exact values until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    for (Index v = 0; v < n; ++v) {
      if (removed[v]) continue;
      double exact = exact_p(v);
      if (exact != p[v]) {
        p[v] = exact;
        heap.push({exact, v});
        changed = changed || exact < t;
      }
    }
    drain();
  }

  CoreResult result;
  result.t = t;
  for (Index v = 0; v < n; ++v) {
    if (!removed[v]) {
      result.members.push_back(v);
      result.p_values.push_back(exact_p(v));
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (removed[v]) {
      result.outside.push_back(v);
      result.witness.push_back(exact_p(v));
    }
  }
  return result;
}

OneModeNetwork core_subnetwork(const OneModeNetwork& g, const CoreResult& core) {
  std::vector<bool> keep(g.nodes().size(), false);
  for (Index v : core.members) keep[v] = true;
  return induced_subnetwork(g, keep);
}

}  // namespace zbnet
