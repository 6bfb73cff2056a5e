#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsample/common.hpp"
#include "gsample/kernel_solvers.hpp"

namespace gsample {

/// The graph a stream defines, kept explicitly.
class MaterializedGraph {
 public:
  explicit MaterializedGraph(std::uint64_t n = 0) : n_(n) {}

  /// Throws InputError on arity 0, vertex >= n, insert of a live edge or
  /// delete of an absent one.
  void apply(const EdgeUpdate& upd);

  std::uint64_t n() const { return n_; }
  const std::map<Hyperedge, double>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t degree(VertexId v) const;
  const std::map<VertexId, std::uint64_t>& degrees() const { return degree_; }
  bool contains(const Hyperedge& e) const { return edges_.count(e) > 0; }

  SmallGraph to_graph() const;

 private:
  std::uint64_t n_;
  std::map<Hyperedge, double> edges_;
  std::map<VertexId, std::uint64_t> degree_;
};

MaterializedGraph materialize(const Stream& s);

enum class Problem { matching, weighted_matching, vertex_cover, hitting_set, hypergraph_matching, property };

std::string to_string(Problem p);

struct OracleParams {
  /// Budget for cover / hitting set searches on instances too large to enumerate.
  std::size_t budget = 64;
  PropertySpec prop;
};

/// Subsets enumerated by the brute-force paths are capped at 2^20.
inline constexpr std::uint64_t kEnumerationLimit = 1ULL << 20;

/// Optimal solution. Small instances are enumerated exhaustively and the
/// kernel solver is required to agree; larger ones use the kernel solver.
/// Throws Error when neither path applies or the two disagree.
Solution oracle_solve(const SmallGraph& g, Problem problem, const OracleParams& params = {});
Solution oracle_solve(const MaterializedGraph& g, Problem problem, const OracleParams& params = {});

/// Exhaustive references, independent of kernel_solvers. Each throws Error
/// when the instance exceeds the enumeration limit.
Solution brute_max_matching(const SmallGraph& g, bool weighted);
Solution brute_min_hitting_set(const SmallGraph& g);
Solution brute_property(const SmallGraph& g, const PropertySpec& prop);
bool brute_fits(const SmallGraph& g, Problem problem);

struct HeavyShallow {
  std::uint64_t heavy = 0;    // h: vertices of degree >= 2 nu + 3
  std::uint64_t shallow = 0;  // s: edges with no heavy endpoint
};

HeavyShallow heavy_shallow_counts(const MaterializedGraph& g, std::uint32_t nu);
std::uint32_t heavy_threshold(std::uint32_t nu);

}  // namespace gsample
