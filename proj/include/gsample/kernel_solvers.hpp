#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsample/common.hpp"

namespace gsample {

struct WeightedEdge {
  Hyperedge vertices;
  double weight = 1.0;

  bool operator==(const WeightedEdge&) const = default;
};

/// Simple (hyper)graph on [0, n): canonical sorted edges, no duplicates.
struct SmallGraph {
  std::uint64_t n = 0;
  std::vector<WeightedEdge> edges;

  std::uint32_t max_arity() const;
};

/// Sorts vertex lists and edges; parallel copies collapse to the heaviest.
SmallGraph make_graph(std::uint64_t n, std::vector<WeightedEdge> edges);
SmallGraph make_graph(std::uint64_t n, const std::vector<Hyperedge>& edges);

struct Solution {
  enum class Kind { matching, vertex_cover, hitting_set, subgraph };
  Kind kind = Kind::matching;
  /// Matching / subgraph edges in canonical order.
  std::vector<WeightedEdge> edges;
  /// Cover / hitting set vertices, ascending.
  std::vector<VertexId> vertices;
  /// Vertex colors for k-colorable certificates, parallel to `vertices`.
  std::vector<std::uint32_t> labels;
  std::size_t size = 0;
  double total_weight = 0;
};

std::string to_string(Solution::Kind k);

/// Maximum cardinality matching (Edmonds' blossom algorithm). Pairwise edges only.
Solution max_matching(const SmallGraph& g);

/// Maximum weight matching by branch and bound, solved per component.
Solution max_weight_matching(const SmallGraph& g);

/// Minimum vertex cover if one of size <= k exists, else nullopt (Exceeds).
std::optional<Solution> min_vertex_cover(const SmallGraph& g, std::size_t k);

/// Minimum hitting set of size <= k by bounded branching, else nullopt.
std::optional<Solution> min_hitting_set(const SmallGraph& g, std::size_t k);

/// Maximum set of pairwise disjoint hyperedges. The search stops once a
/// matching of size k + 1 is found, so results above k are only witnesses
/// of a violated promise, not necessarily maximum.
Solution max_hypergraph_matching(const SmallGraph& g, std::size_t k);

struct PropertySpec {
  enum class Kind { b_matching, max_forest, disjoint_paths, k_colorable };
  Kind kind = Kind::b_matching;
  std::uint32_t param = 1;

  bool operator==(const PropertySpec&) const = default;
};

/// "b_matching:2", "max_forest", "disjoint_paths", "k_colorable:3".
PropertySpec parse_property(const std::string& s);
std::string to_string(const PropertySpec& p);

/// Largest edge set of the contracted graph with the property. Loops are
/// ignored. Size counts edges.
Solution solve_contraction_property(const SmallGraph& g, const PropertySpec& prop);

bool is_matching(const SmallGraph& g, const Solution& s);
bool is_vertex_cover(const SmallGraph& g, const Solution& s);
bool is_hitting_set(const SmallGraph& g, const Solution& s);
bool satisfies_property(const SmallGraph& g, const Solution& s, const PropertySpec& prop);

}  // namespace gsample
