#include "gsample/kernel_solvers.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace gsample {
namespace {

// Graph relabeled onto [0, size) in ascending vertex order.
struct Local {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  std::vector<std::size_t> source;  // index into the original edge list

  int size() const { return static_cast<int>(ids.size()); }
};

Local localize(const SmallGraph& g, bool skip_loops) {
  Local l;
  for (const auto& e : g.edges) {
    if (skip_loops && e.vertices.size() < 2) continue;
    l.ids.insert(l.ids.end(), e.vertices.begin(), e.vertices.end());
  }
  std::sort(l.ids.begin(), l.ids.end());
  l.ids.erase(std::unique(l.ids.begin(), l.ids.end()), l.ids.end());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (skip_loops && e.vertices.size() < 2) continue;
    std::vector<int> le;
    for (auto v : e.vertices)
      le.push_back(static_cast<int>(std::lower_bound(l.ids.begin(), l.ids.end(), v) - l.ids.begin()));
    l.edges.push_back(std::move(le));
    l.weights.push_back(e.weight);
    l.source.push_back(i);
  }
  return l;
}

void require_pairwise(const SmallGraph& g, const char* what) {
  for (const auto& e : g.edges)
    if (e.vertices.size() != 2) throw InputError(std::string(what) + " needs a graph with pairwise edges");
}

// Connected components over edge indices.
std::vector<std::vector<std::size_t>> components(const Local& l) {
  std::vector<int> parent(l.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : l.edges)
    for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < l.edges.size(); ++i) groups[find(l.edges[i][0])].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, idx] : groups) out.push_back(std::move(idx));
  return out;
}

Solution edge_solution(const SmallGraph& g, const std::vector<std::size_t>& picked, Solution::Kind kind) {
  Solution s;
  s.kind = kind;
  auto sorted = picked;
  std::sort(sorted.begin(), sorted.end());
  for (auto i : sorted) {
    s.edges.push_back(g.edges[i]);
    s.total_weight += g.edges[i].weight;
  }
  s.size = s.edges.size();
  return s;
}

Solution vertex_solution(std::vector<VertexId> vs, Solution::Kind kind) {
  Solution s;
  s.kind = kind;
  std::sort(vs.begin(), vs.end());
  s.vertices = std::move(vs);
  s.size = s.vertices.size();
  return s;
}

// ------------------------------------------------------------ blossom

class Blossom {
 public:
  explicit Blossom(int n) : n_(n), adj_(n), match_(n, -1), p_(n), base_(n), used_(n), in_blossom_(n) {}

  void add_edge(int u, int v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  const std::vector<int>& solve() {
    // Greedy start in adjacency order.
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1)
        for (int to : adj_[v])
          if (match_[to] == -1) {
            match_[to] = v;
            match_[v] = to;
            break;
          }
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int u = find_path(v);
      while (u != -1) {
        const int pv = p_[u], ppv = match_[pv];
        match_[u] = pv;
        match_[pv] = u;
        u = ppv;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = p_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = p_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      p_[v] = child;
      child = match_[v];
      v = p_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(p_.begin(), p_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && p_[match_[to]] != -1)) {
          const int cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push_back(i);
              }
            }
        } else if (p_[to] == -1) {
          p_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          q.push_back(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, p_, base_;
  std::vector<char> used_, in_blossom_;
};

// ------------------------------------------------------------ weighted matching

class WeightedSearch {
 public:
  WeightedSearch(const Local& l, const std::vector<std::size_t>& idx) : l_(l) {
    order_ = idx;
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return l.weights[a] > l.weights[b]; });
    busy_.assign(l.size(), 0);
    mark_.assign(l.size(), 0);
    maxw_.assign(l.size(), 0);
    deg_.assign(l.size(), 0);
  }

  std::vector<std::size_t> run() {
    // Greedy by weight as the incumbent.
    for (auto e : order_) {
      const int u = l_.edges[e][0], v = l_.edges[e][1];
      if (!busy_[u] && !busy_[v]) {
        busy_[u] = busy_[v] = 1;
        best_.push_back(e);
        best_w_ += l_.weights[e];
      }
    }
    std::fill(busy_.begin(), busy_.end(), 0);
    rec(0, 0.0);
    return best_;
  }

 private:
  double bound(std::size_t i) {
    double half = 0, cover = 0;
    std::vector<int> touched;
    for (std::size_t j = i; j < order_.size(); ++j) {
      const auto e = order_[j];
      const int u = l_.edges[e][0], v = l_.edges[e][1];
      if (busy_[u] || busy_[v]) continue;
      for (int x : {u, v}) {
        if (deg_[x] == 0) touched.push_back(x);
        maxw_[x] = std::max(maxw_[x], l_.weights[e]);
        ++deg_[x];
      }
    }
    for (int x : touched) half += maxw_[x];
    // Every matching edge owns a distinct cover vertex, so a greedy cover
    // weighted by max incident weight is also an upper bound.
    for (std::size_t j = i; j < order_.size(); ++j) {
      const auto e = order_[j];
      const int u = l_.edges[e][0], v = l_.edges[e][1];
      if (busy_[u] || busy_[v] || mark_[u] || mark_[v]) continue;
      const int c = deg_[u] != deg_[v] ? (deg_[u] > deg_[v] ? u : v) : (maxw_[u] <= maxw_[v] ? u : v);
      mark_[c] = 1;
      cover += maxw_[c];
    }
    for (int x : touched) maxw_[x] = 0, mark_[x] = 0, deg_[x] = 0;
    return std::min(half / 2, cover);
  }

  void rec(std::size_t i, double cur) {
    if (cur > best_w_ * (1 + 1e-12) + 1e-12) {
      best_w_ = cur;
      best_ = chosen_;
    }
    if (i == order_.size()) return;
    if (cur + bound(i) <= best_w_ * (1 + 1e-12) + 1e-12) return;
    const auto e = order_[i];
    const int u = l_.edges[e][0], v = l_.edges[e][1];
    if (!busy_[u] && !busy_[v]) {
      busy_[u] = busy_[v] = 1;
      chosen_.push_back(e);
      rec(i + 1, cur + l_.weights[e]);
      chosen_.pop_back();
      busy_[u] = busy_[v] = 0;
    }
    rec(i + 1, cur);
  }

  const Local& l_;
  std::vector<std::size_t> order_;
  std::vector<char> busy_, mark_;
  std::vector<double> maxw_;
  std::vector<int> deg_;
  std::vector<std::size_t> chosen_, best_;
  double best_w_ = 0;
};

// ------------------------------------------------------------ vertex cover

class CoverSearch {
 public:
  explicit CoverSearch(const Local& l) : l_(l), adj_(l.size()), in_(l.size(), 0), deg_(l.size(), 0) {
    for (const auto& e : l.edges) {
      adj_[e[0]].push_back(e[1]);
      adj_[e[1]].push_back(e[0]);
    }
    for (int v = 0; v < l.size(); ++v) deg_[v] = static_cast<int>(adj_[v].size());
  }

  bool feasible(int budget) { return rec(budget); }
  std::vector<int> cover() const {
    std::vector<int> c;
    for (int v = 0; v < l_.size(); ++v)
      if (in_[v]) c.push_back(v);
    return c;
  }

 private:
  void take(int v) {
    in_[v] = 1;
    for (int u : adj_[v])
      if (!in_[u]) --deg_[u], --deg_[v];
  }
  void untake(int v) {
    in_[v] = 0;
    for (int u : adj_[v])
      if (!in_[u]) ++deg_[u], ++deg_[v];
  }

  bool rec(int budget) {
    int top = -1;
    for (int v = 0; v < l_.size(); ++v)
      if (!in_[v] && deg_[v] > 0 && (top == -1 || deg_[v] > deg_[top])) top = v;
    if (top == -1) return true;
    if (budget == 0) return false;
    if (deg_[top] == 1) {
      // Remaining edges form a matching.
      int needed = 0;
      for (int v = 0; v < l_.size(); ++v)
        if (!in_[v] && deg_[v] > 0) ++needed;
      if (needed / 2 > budget) return false;
      for (int v = 0; v < l_.size(); ++v)
        if (!in_[v] && deg_[v] > 0) take(v);
      return true;
    }
    if (lower_bound() > budget) return false;

    take(top);
    if (rec(budget - 1)) return true;
    untake(top);
    if (deg_[top] > budget) return false;

    std::vector<int> nb;
    for (int u : adj_[top])
      if (!in_[u]) nb.push_back(u);
    for (int u : nb) take(u);
    if (rec(budget - static_cast<int>(nb.size()))) return true;
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) untake(*it);
    return false;
  }

  // Greedy maximal matching among uncovered edges.
  int lower_bound() const {
    std::vector<char> used(l_.size(), 0);
    int m = 0;
    for (const auto& e : l_.edges) {
      const int u = e[0], v = e[1];
      if (in_[u] || in_[v] || used[u] || used[v]) continue;
      used[u] = used[v] = 1;
      ++m;
    }
    return m;
  }

  const Local& l_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> in_;
  std::vector<int> deg_;
};

// ------------------------------------------------------------ hitting set

class HittingSearch {
 public:
  explicit HittingSearch(const Local& l) : l_(l), in_(l.size(), 0) {}

  bool rec(int budget) {
    const std::vector<int>* pick = nullptr;
    for (const auto& e : l_.edges) {
      if (hit(e)) continue;
      if (!pick || e.size() < pick->size()) pick = &e;
    }
    if (!pick) return true;
    if (budget == 0) return false;
    if (packing() > budget) return false;
    for (int v : *pick) {
      in_[v] = 1;
      if (rec(budget - 1)) return true;
      in_[v] = 0;
    }
    return false;
  }

  int packing() const {
    std::vector<char> used(l_.size(), 0);
    int m = 0;
    for (const auto& e : l_.edges) {
      if (hit(e)) continue;
      bool free = true;
      for (int v : e) free = free && !used[v];
      if (!free) continue;
      for (int v : e) used[v] = 1;
      ++m;
    }
    return m;
  }

  std::vector<int> chosen() const {
    std::vector<int> c;
    for (int v = 0; v < l_.size(); ++v)
      if (in_[v]) c.push_back(v);
    return c;
  }

 private:
  bool hit(const std::vector<int>& e) const {
    for (int v : e)
      if (in_[v]) return true;
    return false;
  }

  const Local& l_;
  std::vector<char> in_;
};

// ------------------------------------------------------------ hypergraph matching

class PackingSearch {
 public:
  PackingSearch(const Local& l, std::vector<std::size_t> idx, std::size_t cap)
      : l_(l), idx_(std::move(idx)), cap_(cap), used_(l.size(), 0) {}

  std::vector<std::size_t> run() {
    rec(0);
    return best_;
  }

 private:
  bool usable(std::size_t e) const {
    for (int v : l_.edges[e])
      if (used_[v]) return false;
    return true;
  }

  std::size_t bound(std::size_t i) const {
    std::size_t edges = 0, min_arity = SIZE_MAX;
    std::vector<char> touched(l_.size(), 0), greedy(l_.size(), 0);
    std::size_t verts = 0, maximal = 0, arity = 1;
    for (std::size_t j = i; j < idx_.size(); ++j) {
      const auto e = idx_[j];
      if (!usable(e)) continue;
      ++edges;
      min_arity = std::min(min_arity, l_.edges[e].size());
      arity = std::max(arity, l_.edges[e].size());
      bool free = true;
      for (int v : l_.edges[e]) {
        if (!touched[v]) touched[v] = 1, ++verts;
        free = free && !greedy[v];
      }
      if (free) {
        for (int v : l_.edges[e]) greedy[v] = 1;
        ++maximal;
      }
    }
    if (edges == 0) return 0;
    return std::min({edges, verts / min_arity, arity * maximal, greedy_hitting(i)});
  }

  // Size of a greedy hitting set of the usable edges; no matching is larger.
  std::size_t greedy_hitting(std::size_t i) const {
    std::vector<std::vector<std::size_t>> inc(l_.size());
    std::vector<std::size_t> open;
    for (std::size_t j = i; j < idx_.size(); ++j) {
      const auto e = idx_[j];
      if (!usable(e)) continue;
      for (int v : l_.edges[e]) inc[v].push_back(open.size());
      open.push_back(e);
    }
    std::vector<char> hit(open.size(), 0);
    std::vector<std::size_t> deg(l_.size());
    for (std::size_t v = 0; v < l_.size(); ++v) deg[v] = inc[v].size();
    std::size_t left = open.size(), size = 0;
    while (left > 0) {
      const auto v = static_cast<std::size_t>(std::max_element(deg.begin(), deg.end()) - deg.begin());
      ++size;
      for (auto j : inc[v]) {
        if (hit[j]) continue;
        hit[j] = 1;
        --left;
        for (int u : l_.edges[open[j]]) --deg[u];
      }
    }
    return size;
  }

  void rec(std::size_t i) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (best_.size() > cap_ || i == idx_.size()) return;
    if (chosen_.size() + bound(i) <= best_.size()) return;
    const auto e = idx_[i];
    if (usable(e)) {
      for (int v : l_.edges[e]) used_[v] = 1;
      chosen_.push_back(e);
      rec(i + 1);
      chosen_.pop_back();
      for (int v : l_.edges[e]) used_[v] = 0;
      if (best_.size() > cap_) return;
    }
    rec(i + 1);
  }

  const Local& l_;
  std::vector<std::size_t> idx_;
  std::size_t cap_;
  std::vector<char> used_;
  std::vector<std::size_t> chosen_, best_;
};

// ------------------------------------------------------------ contraction properties

std::vector<std::size_t> b_matching(const Local& l, std::uint32_t c) {
  // Vertex v becomes c copies; edge uv becomes a pair e_u - e_v with e_u
  // joined to every copy of u. Maximum matching = |E| + maximum b-matching.
  const int copies = static_cast<int>(c);
  const int base = l.size() * copies;
  Blossom bl(base + 2 * static_cast<int>(l.edges.size()));
  for (std::size_t i = 0; i < l.edges.size(); ++i) {
    const int eu = base + 2 * static_cast<int>(i), ev = eu + 1;
    bl.add_edge(eu, ev);
    for (int k = 0; k < copies; ++k) {
      bl.add_edge(eu, l.edges[i][0] * copies + k);
      bl.add_edge(ev, l.edges[i][1] * copies + k);
    }
  }
  const auto& match = bl.solve();
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < l.edges.size(); ++i) {
    const int eu = base + 2 * static_cast<int>(i), ev = eu + 1;
    if (match[eu] != -1 && match[eu] < base && match[ev] != -1 && match[ev] < base) picked.push_back(i);
  }
  return picked;
}

struct RollbackDsu {
  std::vector<int> parent, rank;
  std::vector<std::pair<int, int>> history;

  explicit RollbackDsu(int n) : parent(n), rank(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    if (rank[a] < rank[b]) std::swap(a, b);
    history.emplace_back(b, rank[a]);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
    return true;
  }
  void undo() {
    const auto [b, old_rank] = history.back();
    history.pop_back();
    const int a = parent[b];
    parent[b] = b;
    rank[a] = old_rank;
  }
};

class PathSearch {
 public:
  explicit PathSearch(const Local& l) : l_(l), dsu_(l.size()), deg_(l.size(), 0) {}

  std::vector<std::size_t> run() {
    rec(0);
    return best_;
  }

 private:
  std::size_t bound(std::size_t i) const {
    std::size_t remaining = 0, slack = 0;
    std::vector<char> seen(l_.size(), 0);
    for (std::size_t j = i; j < l_.edges.size(); ++j) {
      const int u = l_.edges[j][0], v = l_.edges[j][1];
      if (deg_[u] >= 2 || deg_[v] >= 2) continue;
      ++remaining;
      for (int x : {u, v})
        if (!seen[x]) seen[x] = 1, slack += 2 - deg_[x];
    }
    return std::min(remaining, slack / 2);
  }

  void rec(std::size_t i) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (i == l_.edges.size()) return;
    if (chosen_.size() + bound(i) <= best_.size()) return;
    const int u = l_.edges[i][0], v = l_.edges[i][1];
    if (deg_[u] < 2 && deg_[v] < 2 && dsu_.find(u) != dsu_.find(v)) {
      dsu_.unite(u, v);
      ++deg_[u], ++deg_[v];
      chosen_.push_back(i);
      rec(i + 1);
      chosen_.pop_back();
      --deg_[u], --deg_[v];
      dsu_.undo();
    }
    rec(i + 1);
  }

  const Local& l_;
  RollbackDsu dsu_;
  std::vector<int> deg_;
  std::vector<std::size_t> chosen_, best_;
};

class ColoringSearch {
 public:
  ColoringSearch(const Local& l, std::uint32_t k) : l_(l), k_(static_cast<int>(k)), color_(l.size(), -1) {
    back_.resize(l.size());
    for (std::size_t i = 0; i < l.edges.size(); ++i) {
      const int u = l.edges[i][0], v = l.edges[i][1];
      back_[std::max(u, v)].push_back(std::min(u, v));
    }
  }

  std::vector<int> run() {
    best_cut_ = -1;
    rec(0, 0, 0, static_cast<int>(l_.edges.size()));
    return best_;
  }

 private:
  // Vertices colored in index order; `undecided` counts edges whose
  // higher endpoint is not yet colored.
  void rec(int v, int used, int cut, int undecided) {
    if (cut + undecided <= best_cut_) return;
    if (v == l_.size()) {
      best_cut_ = cut;
      best_ = color_;
      return;
    }
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      color_[v] = c;
      int gain = 0;
      for (int u : back_[v]) gain += color_[u] != c;
      rec(v + 1, std::max(used, c + 1), cut + gain, undecided - static_cast<int>(back_[v].size()));
    }
    color_[v] = -1;
  }

  const Local& l_;
  int k_;
  std::vector<int> color_, best_;
  std::vector<std::vector<int>> back_;
  int best_cut_ = -1;
};

std::set<std::vector<VertexId>> edge_set(const SmallGraph& g) {
  std::set<std::vector<VertexId>> s;
  for (const auto& e : g.edges) s.insert(e.vertices);
  return s;
}

bool edges_belong(const SmallGraph& g, const Solution& s) {
  const auto all = edge_set(g);
  std::set<std::vector<VertexId>> seen;
  for (const auto& e : s.edges) {
    if (!all.count(e.vertices) || !seen.insert(e.vertices).second) return false;
  }
  return s.size == s.edges.size();
}

}  // namespace

std::uint32_t SmallGraph::max_arity() const {
  std::size_t a = 0;
  for (const auto& e : edges) a = std::max(a, e.vertices.size());
  return static_cast<std::uint32_t>(a);
}

SmallGraph make_graph(std::uint64_t n, std::vector<WeightedEdge> edges) {
  SmallGraph g;
  g.n = n;
  for (auto& e : edges) e.vertices = canonical_edge(std::move(e.vertices), n);
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.vertices != b.vertices ? a.vertices < b.vertices : a.weight > b.weight;
  });
  for (auto& e : edges)
    if (g.edges.empty() || g.edges.back().vertices != e.vertices) g.edges.push_back(std::move(e));
  return g;
}

SmallGraph make_graph(std::uint64_t n, const std::vector<Hyperedge>& edges) {
  std::vector<WeightedEdge> w;
  for (const auto& e : edges) w.push_back({e, 1.0});
  return make_graph(n, std::move(w));
}

std::string to_string(Solution::Kind k) {
  switch (k) {
    case Solution::Kind::matching: return "matching";
    case Solution::Kind::vertex_cover: return "vertex_cover";
    case Solution::Kind::hitting_set: return "hitting_set";
    case Solution::Kind::subgraph: return "subgraph";
  }
  return "?";
}

Solution max_matching(const SmallGraph& g) {
  require_pairwise(g, "max_matching");
  const Local l = localize(g, false);
  Blossom bl(l.size());
  for (const auto& e : l.edges) bl.add_edge(e[0], e[1]);
  const auto& match = bl.solve();
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < l.edges.size(); ++i)
    if (match[l.edges[i][0]] == l.edges[i][1]) picked.push_back(l.source[i]);
  return edge_solution(g, picked, Solution::Kind::matching);
}

Solution max_weight_matching(const SmallGraph& g) {
  require_pairwise(g, "max_weight_matching");
  const Local l = localize(g, false);
  std::vector<std::size_t> picked;
  for (const auto& comp : components(l)) {
    WeightedSearch search(l, comp);
    for (auto i : search.run()) picked.push_back(l.source[i]);
  }
  return edge_solution(g, picked, Solution::Kind::matching);
}

std::optional<Solution> min_vertex_cover(const SmallGraph& g, std::size_t k) {
  require_pairwise(g, "min_vertex_cover");
  const Local l = localize(g, false);
  const std::size_t lower = max_matching(g).size;
  if (lower > k) return std::nullopt;
  for (std::size_t budget = lower; budget <= k; ++budget) {
    CoverSearch search(l);
    if (!search.feasible(static_cast<int>(budget))) continue;
    std::vector<VertexId> vs;
    for (int v : search.cover()) vs.push_back(l.ids[v]);
    return vertex_solution(std::move(vs), Solution::Kind::vertex_cover);
  }
  return std::nullopt;
}

std::optional<Solution> min_hitting_set(const SmallGraph& g, std::size_t k) {
  const Local l = localize(g, false);
  HittingSearch probe(l);
  const auto lower = static_cast<std::size_t>(probe.packing());
  for (std::size_t budget = lower; budget <= k; ++budget) {
    HittingSearch search(l);
    if (!search.rec(static_cast<int>(budget))) continue;
    std::vector<VertexId> vs;
    for (int v : search.chosen()) vs.push_back(l.ids[v]);
    return vertex_solution(std::move(vs), Solution::Kind::hitting_set);
  }
  return std::nullopt;
}

Solution max_hypergraph_matching(const SmallGraph& g, std::size_t k) {
  const Local l = localize(g, false);
  std::vector<std::size_t> picked;
  for (const auto& comp : components(l)) {
    PackingSearch search(l, comp, k);
    for (auto i : search.run()) picked.push_back(l.source[i]);
  }
  return edge_solution(g, picked, Solution::Kind::matching);
}

PropertySpec parse_property(const std::string& s) {
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  std::uint32_t param = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1 || v == 0 || v > 64) throw InputError("");
      param = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw InputError("bad property parameter in '" + s + "'");
    }
  }
  if (name == "b_matching") return {PropertySpec::Kind::b_matching, param ? param : 1};
  if (name == "k_colorable") return {PropertySpec::Kind::k_colorable, param ? param : 2};
  if (param) throw InputError("property '" + name + "' takes no parameter");
  if (name == "max_forest") return {PropertySpec::Kind::max_forest, 0};
  if (name == "disjoint_paths") return {PropertySpec::Kind::disjoint_paths, 0};
  throw InputError("unsupported property '" + s + "'");
}

std::string to_string(const PropertySpec& p) {
  switch (p.kind) {
    case PropertySpec::Kind::b_matching: return "b_matching:" + std::to_string(p.param);
    case PropertySpec::Kind::max_forest: return "max_forest";
    case PropertySpec::Kind::disjoint_paths: return "disjoint_paths";
    case PropertySpec::Kind::k_colorable: return "k_colorable:" + std::to_string(p.param);
  }
  return "?";
}

Solution solve_contraction_property(const SmallGraph& g, const PropertySpec& prop) {
  for (const auto& e : g.edges)
    if (e.vertices.size() > 2) throw InputError("contraction properties need a graph with pairwise edges");
  const Local l = localize(g, true);
  std::vector<std::size_t> local_pick;
  Solution out;
  switch (prop.kind) {
    case PropertySpec::Kind::b_matching:
      if (prop.param == 0) throw InputError("b_matching needs a positive degree bound");
      local_pick = b_matching(l, prop.param);
      break;
    case PropertySpec::Kind::max_forest: {
      RollbackDsu dsu(l.size());
      for (std::size_t i = 0; i < l.edges.size(); ++i)
        if (dsu.unite(l.edges[i][0], l.edges[i][1])) local_pick.push_back(i);
      break;
    }
    case PropertySpec::Kind::disjoint_paths:
      local_pick = PathSearch(l).run();
      break;
    case PropertySpec::Kind::k_colorable: {
      if (prop.param == 0) throw InputError("k_colorable needs at least one color");
      if (l.size() > 24 && prop.param < static_cast<std::uint32_t>(l.size()))
        throw InputError("k_colorable search limited to 24 non-isolated vertices");
      const auto colors = ColoringSearch(l, prop.param).run();
      for (std::size_t i = 0; i < l.edges.size(); ++i)
        if (colors[l.edges[i][0]] != colors[l.edges[i][1]]) local_pick.push_back(i);
      for (int v = 0; v < l.size(); ++v) {
        out.vertices.push_back(l.ids[v]);
        out.labels.push_back(static_cast<std::uint32_t>(colors[v]));
      }
      break;
    }
  }
  std::vector<std::size_t> picked;
  for (auto i : local_pick) picked.push_back(l.source[i]);
  auto s = edge_solution(g, picked, Solution::Kind::subgraph);
  s.vertices = std::move(out.vertices);
  s.labels = std::move(out.labels);
  return s;
}

bool is_matching(const SmallGraph& g, const Solution& s) {
  if (!edges_belong(g, s)) return false;
  std::set<VertexId> used;
  for (const auto& e : s.edges)
    for (auto v : e.vertices)
      if (!used.insert(v).second) return false;
  return true;
}

bool is_hitting_set(const SmallGraph& g, const Solution& s) {
  const std::set<VertexId> in(s.vertices.begin(), s.vertices.end());
  if (in.size() != s.vertices.size() || s.size != s.vertices.size()) return false;
  for (auto v : in)
    if (v >= g.n) return false;
  for (const auto& e : g.edges) {
    bool hit = false;
    for (auto v : e.vertices) hit = hit || in.count(v);
    if (!hit) return false;
  }
  return true;
}

bool is_vertex_cover(const SmallGraph& g, const Solution& s) { return is_hitting_set(g, s); }

bool satisfies_property(const SmallGraph& g, const Solution& s, const PropertySpec& prop) {
  if (!edges_belong(g, s)) return false;
  std::map<VertexId, int> deg;
  for (const auto& e : s.edges) {
    if (e.vertices.size() != 2) return false;
    ++deg[e.vertices[0]], ++deg[e.vertices[1]];
  }
  auto acyclic = [&] {
    std::map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      return it->second = find(it->second);
    };
    for (const auto& e : s.edges) {
      const auto a = find(e.vertices[0]), b = find(e.vertices[1]);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  };
  switch (prop.kind) {
    case PropertySpec::Kind::b_matching:
      for (const auto& [v, d] : deg)
        if (d > static_cast<int>(prop.param)) return false;
      return true;
    case PropertySpec::Kind::max_forest: return acyclic();
    case PropertySpec::Kind::disjoint_paths:
      for (const auto& [v, d] : deg)
        if (d > 2) return false;
      return acyclic();
    case PropertySpec::Kind::k_colorable: {
      std::map<VertexId, std::uint32_t> color;
      if (s.labels.size() != s.vertices.size()) return false;
      for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (s.labels[i] >= prop.param) return false;
        color[s.vertices[i]] = s.labels[i];
      }
      for (const auto& e : s.edges) {
        const auto a = color.find(e.vertices[0]), b = color.find(e.vertices[1]);
        if (a == color.end() || b == color.end() || a->second == b->second) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace gsample
