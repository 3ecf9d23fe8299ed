#include "zbnet/islands.hpp"

#include <algorithm>
#include <map>

#include "zbnet/errors.hpp"
#include "zbnet/union_find.hpp"

namespace zbnet {

namespace {

struct Component {
  std::vector<Index> members;
  double height = 0.0;
  bool oversized = false;
};

Island make_island(const OneModeNetwork& g, std::vector<Index> nodes, double height) {
  std::sort(nodes.begin(), nodes.end());
  Island island;
  island.height = height;
  const SparseMatrix& m = g.matrix();
  for (Index u : nodes) {
    auto cs = m.row_cols(u);
    auto vs = m.row_values(u);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (std::binary_search(nodes.begin(), nodes.end(), cs[k])) island.links.push_back({u, cs[k], vs[k]});
    }
  }
  island.nodes = std::move(nodes);
  return island;
}

}  // namespace

std::vector<Island> link_islands(const OneModeNetwork& g, std::size_t size_min, std::size_t size_max) {
  if (g.directed()) throw Error("link islands need an undirected network");
  if (size_min < 2 || size_min > size_max) throw Error("island sizes must satisfy 1 < min <= max");
  const std::size_t n = g.nodes().size();
  std::vector<Arc> edges = g.matrix().arcs();
  std::stable_sort(edges.begin(), edges.end(), [](const Arc& a, const Arc& b) { return a.weight > b.weight; });

  UnionFind uf(n);
  std::vector<Component> comp(n);
  for (Index v = 0; v < n; ++v) comp[v].members = {v};

  std::vector<Island> out;
  auto emit = [&](const Component& c) {
    if (!c.oversized && c.members.size() >= size_min && c.members.size() <= size_max)
      out.push_back(make_island(g, c.members, c.height));
  };

  std::vector<std::pair<std::size_t, std::size_t>> pre;
  for (std::size_t begin = 0; begin < edges.size();) {
    std::size_t end = begin;
    while (end < edges.size() && edges[end].weight == edges[begin].weight) ++end;
    const double w = edges[begin].weight;

    pre.clear();
    for (std::size_t e = begin; e < end; ++e) pre.emplace_back(uf.find(edges[e].row), uf.find(edges[e].col));
    std::vector<std::size_t> touched;
    for (auto [a, b] : pre) {
      if (a == b) continue;
      touched.push_back(a);
      touched.push_back(b);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (auto [a, b] : pre) uf.unite(a, b);

    std::map<std::size_t, std::vector<std::size_t>> merged;  // new root -> old roots
    for (std::size_t r : touched) merged[uf.find(r)].push_back(r);
    for (auto& [root, parts] : merged) {
      Component next;
      next.height = w;
      next.oversized = uf.size_of(root) > size_max;
      for (std::size_t p : parts) {
        if (next.oversized) {
          emit(comp[p]);
        } else {
          next.members.insert(next.members.end(), comp[p].members.begin(), comp[p].members.end());
        }
        comp[p] = Component{};
      }
      comp[root] = std::move(next);
    }
    begin = end;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (uf.find(v) == v) emit(comp[v]);

  std::sort(out.begin(), out.end(), [](const Island& a, const Island& b) {
    if (a.height != b.height) return a.height > b.height;
    return a.nodes.front() < b.nodes.front();
  });
  return out;
}

}  // namespace zbnet
