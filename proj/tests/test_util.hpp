#pragma once

#include <algorithm>
#include <vector>

#include "gsample/kernel_solvers.hpp"
#include "gsample/rng.hpp"

namespace testutil {

using namespace gsample;

inline SmallGraph random_graph(std::uint64_t n, double p, SplitMix64& gen, bool weighted = false) {
  std::vector<WeightedEdge> es;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (gen.unit() < p) es.push_back({{u, v}, weighted ? 1.0 + static_cast<double>(gen.below(20)) : 1.0});
  return make_graph(n, std::move(es));
}

inline SmallGraph random_uniform_hypergraph(std::uint64_t n, std::size_t m, std::size_t d, SplitMix64& gen) {
  std::vector<Hyperedge> es;
  while (es.size() < m) {
    Hyperedge e;
    while (e.size() < d) {
      const VertexId v = gen.below(n);
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    if (std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
  }
  return make_graph(n, es);
}

// Labeled graph on n vertices whose edge set is the bit pattern `mask`
// over the pairs (u, v), u < v, in lexicographic order.
inline SmallGraph graph_from_mask(std::uint64_t n, std::uint64_t mask) {
  std::vector<Hyperedge> es;
  int bit = 0;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) es.push_back({u, v});
  return make_graph(n, es);
}

inline SmallGraph petersen() {
  std::vector<Hyperedge> es;
  for (VertexId i = 0; i < 5; ++i) {
    es.push_back({i, (i + 1) % 5});
    es.push_back({i, i + 5});
    es.push_back({i + 5, (i + 2) % 5 + 5});
  }
  for (auto& e : es) std::sort(e.begin(), e.end());
  return make_graph(10, es);
}

}  // namespace testutil
