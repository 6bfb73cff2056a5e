#include "gsample/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace gsample {
namespace {

struct Indexed {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  std::vector<std::size_t> source;
};

Indexed index_graph(const SmallGraph& g, bool skip_loops) {
  Indexed x;
  for (const auto& e : g.edges)
    if (!skip_loops || e.vertices.size() > 1) x.ids.insert(x.ids.end(), e.vertices.begin(), e.vertices.end());
  std::sort(x.ids.begin(), x.ids.end());
  x.ids.erase(std::unique(x.ids.begin(), x.ids.end()), x.ids.end());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (skip_loops && g.edges[i].vertices.size() < 2) continue;
    std::vector<int> e;
    for (auto v : g.edges[i].vertices)
      e.push_back(static_cast<int>(std::find(x.ids.begin(), x.ids.end(), v) - x.ids.begin()));
    x.edges.push_back(std::move(e));
    x.weights.push_back(g.edges[i].weight);
    x.source.push_back(i);
  }
  return x;
}

Solution from_edges(const SmallGraph& g, std::vector<std::size_t> picked, Solution::Kind kind) {
  std::sort(picked.begin(), picked.end());
  Solution s;
  s.kind = kind;
  for (auto i : picked) {
    s.edges.push_back(g.edges[i]);
    s.total_weight += g.edges[i].weight;
  }
  s.size = s.edges.size();
  return s;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

[[noreturn]] void disagree(Problem p, std::size_t kernel, std::size_t brute) {
  throw Error("oracle disagreement on " + to_string(p) + ": kernel solver " + std::to_string(kernel) +
              ", enumeration " + std::to_string(brute));
}

// Proper coloring of the chosen edges with k colors, by backtracking.
bool colorable(int nv, const std::vector<std::pair<int, int>>& es, int k, std::vector<int>& color) {
  std::vector<std::vector<int>> adj(nv);
  for (auto [u, v] : es) adj[u].push_back(v), adj[v].push_back(u);
  color.assign(nv, -1);
  std::function<bool(int, int)> rec = [&](int v, int used) {
    if (v == nv) return true;
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      for (int u : adj[v]) ok = ok && color[u] != c;
      if (!ok) continue;
      color[v] = c;
      if (rec(v + 1, std::max(used, c + 1))) return true;
    }
    color[v] = -1;
    return false;
  };
  return rec(0, 0);
}

}  // namespace

void MaterializedGraph::apply(const EdgeUpdate& upd) {
  if (upd.delta != 1 && upd.delta != -1) throw InputError("update delta must be +1 or -1");
  const Hyperedge e = canonical_edge(upd.vertices, n_);
  auto it = edges_.find(e);
  if (upd.delta == 1) {
    if (it != edges_.end()) throw InputError("insert of an edge that is already live");
    edges_.emplace(e, upd.weight);
    for (auto v : e) ++degree_[v];
  } else {
    if (it == edges_.end()) throw InputError("delete of an edge that is not live");
    edges_.erase(it);
    for (auto v : e)
      if (--degree_[v] == 0) degree_.erase(v);
  }
}

std::uint64_t MaterializedGraph::degree(VertexId v) const {
  const auto it = degree_.find(v);
  return it == degree_.end() ? 0 : it->second;
}

SmallGraph MaterializedGraph::to_graph() const {
  SmallGraph g;
  g.n = n_;
  for (const auto& [e, w] : edges_) g.edges.push_back({e, w});
  return g;
}

MaterializedGraph materialize(const Stream& s) {
  MaterializedGraph g(s.n);
  std::size_t line = 0;
  for (const auto& u : s.updates) {
    ++line;
    try {
      g.apply(u);
    } catch (const InputError& e) {
      throw InputError("update " + std::to_string(line) + ": " + e.what());
    }
  }
  return g;
}

std::string to_string(Problem p) {
  switch (p) {
    case Problem::matching: return "matching";
    case Problem::weighted_matching: return "weighted_matching";
    case Problem::vertex_cover: return "vertex_cover";
    case Problem::hitting_set: return "hitting_set";
    case Problem::hypergraph_matching: return "hypergraph_matching";
    case Problem::property: return "property";
  }
  return "?";
}

bool brute_fits(const SmallGraph& g, Problem problem) {
  const auto x = index_graph(g, problem == Problem::property);
  const std::size_t m = x.edges.size(), nv = x.ids.size();
  switch (problem) {
    case Problem::matching:
    case Problem::weighted_matching:
    case Problem::hypergraph_matching: return m <= 20 || nv <= 14;
    case Problem::vertex_cover:
    case Problem::hitting_set: return nv <= 20;
    case Problem::property: return m <= 20;
  }
  return false;
}

Solution brute_max_matching(const SmallGraph& g, bool weighted) {
  if (!brute_fits(g, Problem::matching)) throw Error("instance too large for exhaustive matching");
  const auto x = index_graph(g, false);
  const int nv = static_cast<int>(x.ids.size());
  // Edges grouped by their smallest vertex; every matching is produced once.
  std::vector<std::vector<std::size_t>> by_min(nv);
  for (std::size_t i = 0; i < x.edges.size(); ++i) by_min[x.edges[i][0]].push_back(i);
  std::vector<char> used(nv, 0);
  std::vector<std::size_t> cur, best;
  double cur_w = 0, best_w = -1;
  std::function<void(int)> rec = [&](int v) {
    while (v < nv && used[v]) ++v;
    if (v == nv) {
      const double score = weighted ? cur_w : static_cast<double>(cur.size());
      if (score > best_w + 1e-12) {
        best_w = score;
        best = cur;
      }
      return;
    }
    rec(v + 1);
    for (auto i : by_min[v]) {
      bool free = true;
      for (int u : x.edges[i]) free = free && !used[u];
      if (!free) continue;
      for (int u : x.edges[i]) used[u] = 1;
      cur.push_back(i);
      cur_w += x.weights[i];
      rec(v + 1);
      cur_w -= x.weights[i];
      cur.pop_back();
      for (int u : x.edges[i]) used[u] = 0;
    }
  };
  rec(0);
  std::vector<std::size_t> picked;
  for (auto i : best) picked.push_back(x.source[i]);
  return from_edges(g, picked, Solution::Kind::matching);
}

Solution brute_min_hitting_set(const SmallGraph& g) {
  if (!brute_fits(g, Problem::hitting_set)) throw Error("instance too large for exhaustive hitting set");
  const auto x = index_graph(g, false);
  const auto nv = static_cast<unsigned>(x.ids.size());
  std::vector<std::uint32_t> masks;
  for (const auto& e : x.edges) {
    std::uint32_t m = 0;
    for (int v : e) m |= 1u << v;
    masks.push_back(m);
  }
  // The full vertex set always hits every edge.
  std::uint32_t best = (1u << nv) - 1;
  for (std::uint32_t s = 0; s < (1u << nv); ++s) {
    if (std::popcount(s) >= std::popcount(best)) continue;
    bool ok = true;
    for (auto m : masks)
      if (!(m & s)) {
        ok = false;
        break;
      }
    if (ok) best = s;
  }
  Solution out;
  out.kind = Solution::Kind::hitting_set;
  for (unsigned v = 0; v < nv; ++v)
    if (best >> v & 1) out.vertices.push_back(x.ids[v]);
  out.size = out.vertices.size();
  return out;
}

Solution brute_property(const SmallGraph& g, const PropertySpec& prop) {
  if (!brute_fits(g, Problem::property)) throw Error("instance too large for exhaustive property search");
  const auto x = index_graph(g, true);
  const int nv = static_cast<int>(x.ids.size());
  const auto m = static_cast<unsigned>(x.edges.size());
  std::uint32_t best = 0;
  std::vector<int> best_colors;
  std::vector<int> parent(nv), deg(nv);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };

  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    if (std::popcount(s) <= std::popcount(best)) continue;
    std::fill(deg.begin(), deg.end(), 0);
    std::iota(parent.begin(), parent.end(), 0);
    bool acyclic = true;
    std::vector<std::pair<int, int>> chosen;
    for (unsigned i = 0; i < m; ++i) {
      if (!(s >> i & 1)) continue;
      const int u = x.edges[i][0], v = x.edges[i][1];
      chosen.emplace_back(u, v);
      ++deg[u], ++deg[v];
      const int a = find(u), b = find(v);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    const int max_deg = nv ? *std::max_element(deg.begin(), deg.end()) : 0;
    bool ok = false;
    std::vector<int> colors;
    switch (prop.kind) {
      case PropertySpec::Kind::b_matching: ok = max_deg <= static_cast<int>(prop.param); break;
      case PropertySpec::Kind::max_forest: ok = acyclic; break;
      case PropertySpec::Kind::disjoint_paths: ok = acyclic && max_deg <= 2; break;
      case PropertySpec::Kind::k_colorable: ok = colorable(nv, chosen, static_cast<int>(prop.param), colors); break;
    }
    if (ok) {
      best = s;
      best_colors = colors;
    }
  }
  std::vector<std::size_t> picked;
  for (unsigned i = 0; i < m; ++i)
    if (best >> i & 1) picked.push_back(x.source[i]);
  auto out = from_edges(g, picked, Solution::Kind::subgraph);
  if (prop.kind == PropertySpec::Kind::k_colorable) {
    std::vector<std::pair<int, int>> chosen;
    for (unsigned i = 0; i < m; ++i)
      if (best >> i & 1) chosen.emplace_back(x.edges[i][0], x.edges[i][1]);
    colorable(nv, chosen, static_cast<int>(prop.param), best_colors);
    for (int v = 0; v < nv; ++v) {
      out.vertices.push_back(x.ids[v]);
      out.labels.push_back(static_cast<std::uint32_t>(best_colors[v]));
    }
  }
  return out;
}

Solution oracle_solve(const SmallGraph& g, Problem problem, const OracleParams& params) {
  const bool small = brute_fits(g, problem);
  switch (problem) {
    case Problem::matching:
    case Problem::hypergraph_matching: {
      const auto kernel = problem == Problem::matching ? max_matching(g) : max_hypergraph_matching(g, g.edges.size());
      if (!is_matching(g, kernel)) throw Error("kernel matching certificate is invalid");
      if (small) {
        const auto brute = brute_max_matching(g, false);
        if (brute.size != kernel.size) disagree(problem, kernel.size, brute.size);
      }
      return kernel;
    }
    case Problem::weighted_matching: {
      const auto kernel = max_weight_matching(g);
      if (!is_matching(g, kernel)) throw Error("kernel matching certificate is invalid");
      if (small) {
        const auto brute = brute_max_matching(g, true);
        if (!close(brute.total_weight, kernel.total_weight))
          throw Error("oracle disagreement on weighted matching: kernel " + std::to_string(kernel.total_weight) +
                      ", enumeration " + std::to_string(brute.total_weight));
      }
      return kernel;
    }
    case Problem::vertex_cover:
    case Problem::hitting_set: {
      if (small) {
        const auto brute = brute_min_hitting_set(g);
        const auto kernel = problem == Problem::vertex_cover ? min_vertex_cover(g, brute.size)
                                                             : min_hitting_set(g, brute.size);
        if (!kernel) disagree(problem, brute.size + 1, brute.size);
        if (kernel->size != brute.size) disagree(problem, kernel->size, brute.size);
        if (!is_hitting_set(g, *kernel)) throw Error("kernel cover certificate is invalid");
        return *kernel;
      }
      const auto kernel = problem == Problem::vertex_cover ? min_vertex_cover(g, params.budget)
                                                           : min_hitting_set(g, params.budget);
      if (!kernel) throw Error("optimum exceeds the oracle budget of " + std::to_string(params.budget));
      if (!is_hitting_set(g, *kernel)) throw Error("kernel cover certificate is invalid");
      return *kernel;
    }
    case Problem::property: {
      const auto kernel = solve_contraction_property(g, params.prop);
      if (!satisfies_property(g, kernel, params.prop)) throw Error("kernel property certificate is invalid");
      if (small) {
        const auto brute = brute_property(g, params.prop);
        if (brute.size != kernel.size) disagree(problem, kernel.size, brute.size);
      }
      return kernel;
    }
  }
  throw Error("unsupported problem");
}

Solution oracle_solve(const MaterializedGraph& g, Problem problem, const OracleParams& params) {
  return oracle_solve(g.to_graph(), problem, params);
}

std::uint32_t heavy_threshold(std::uint32_t nu) { return 2 * nu + 3; }

HeavyShallow heavy_shallow_counts(const MaterializedGraph& g, std::uint32_t nu) {
  const auto thr = heavy_threshold(nu);
  HeavyShallow hs;
  for (const auto& [v, d] : g.degrees())
    if (d >= thr) ++hs.heavy;
  for (const auto& [e, w] : g.edges()) {
    bool heavy = false;
    for (auto v : e) heavy = heavy || g.degree(v) >= thr;
    if (!heavy) ++hs.shallow;
  }
  return hs;
}

}  // namespace gsample
