#include "gsample/stream_algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "gsample/rng.hpp"

namespace gsample {

namespace {

constexpr std::uint64_t kSketchTag = 0x5e7c;
constexpr std::uint64_t kMemberTag = 0xa4b0;
constexpr std::uint64_t kInducedTag = 0x1d5c;

const std::pair<Mode, const char*> kModeNames[] = {
    {Mode::exact_matching, "exact-matching"},
    {Mode::weighted_matching, "weighted-matching"},
    {Mode::large_matching, "large-matching"},
    {Mode::semi_streaming, "semi-streaming"},
    {Mode::weighted_large, "weighted-large"},
    {Mode::arboricity, "arboricity"},
    {Mode::hitting_set, "hitting-set"},
    {Mode::hypergraph_matching, "hypergraph-matching"},
    {Mode::contraction, "contraction"},
};

std::uint32_t ceil_u32(double x) { return static_cast<std::uint32_t>(std::max(1.0, std::ceil(x - 1e-9))); }

bool cardinality_mode(Mode m) { return m != Mode::weighted_matching && m != Mode::weighted_large; }

// Kernel relabelled onto [0, #vertices) so solvers never size arrays by n.
struct Kernel {
  SmallGraph g;
  std::vector<VertexId> label;
};

Kernel compact(std::vector<WeightedEdge> edges) {
  std::vector<VertexId> ids;
  for (const auto& e : edges) ids.insert(ids.end(), e.vertices.begin(), e.vertices.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto& e : edges)
    for (auto& v : e.vertices) v = static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  Kernel k;
  k.g = make_graph(ids.size(), std::move(edges));
  k.label = std::move(ids);
  return k;
}

Solution relabel(Solution s, const std::vector<VertexId>& label) {
  for (auto& e : s.edges) {
    for (auto& v : e.vertices) v = label[v];
    std::sort(e.vertices.begin(), e.vertices.end());
  }
  std::sort(s.edges.begin(), s.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.vertices < b.vertices; });
  for (auto& v : s.vertices) v = label[v];
  // labels stay parallel to vertices; label is increasing so order is kept.
  return s;
}

/// Union of extracted edges, one entry per distinct hyperedge.
std::vector<WeightedEdge> kernel_edges(const SampledSubgraph& sub) {
  std::map<Hyperedge, double> seen;
  for (const auto& e : sub.edges) {
    auto [it, fresh] = seen.try_emplace(e.vertices, e.weight);
    if (!fresh) it->second = std::max(it->second, e.weight);
  }
  std::vector<WeightedEdge> out;
  out.reserve(seen.size());
  for (auto& [v, w] : seen) out.push_back({v, w});
  return out;
}

void add_space(EstimateReport& r, const SpaceReport& s) {
  r.cells = s.cells;
  r.bytes = s.bytes;
}

std::string num(std::uint64_t x) { return std::to_string(x); }

}  // namespace

Mode parse_mode(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), '_', '-');
  for (const auto& [m, name] : kModeNames)
    if (t == name) return m;
  throw InputError("unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  for (const auto& [mm, name] : kModeNames)
    if (mm == m) return name;
  return "unknown";
}

void AlgoParams::validate() const {
  if (k == 0) throw InputError("k must be at least 1");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw InputError("alpha must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("eps must lie in (0, 1]");
  if (nu == 0) throw InputError("nu must be at least 1");
  if (d == 0 || d > 8) throw InputError("d must lie in [1, 8]");
  if (!(r_const > 0) || !(b_const > 0) || !(p_const > 0)) throw InputError("constants must be positive");
  if (t_cap < 2) throw InputError("t-cap must be at least 2");
  if (reps == 0) throw InputError("reps must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  if (mode == Mode::large_matching && alpha > std::sqrt(static_cast<double>(k)) + 1e-12)
    throw InputError("large-matching needs alpha <= sqrt(k)");
  if (mode == Mode::weighted_large && !(w_max >= 1.0 && std::isfinite(w_max)))
    throw InputError("weighted-large needs w_max >= 1");
  if (mode == Mode::contraction && static_cast<double>(k) * k * 4 > 4294967296.0)
    throw InputError("contraction: 4k^2 colors exceed 2^32");
}

std::uint32_t exact_reps(double r_const, std::uint32_t k) { return ceil_u32(r_const * std::log2(k + 2.0)); }

std::uint32_t large_reps(double r_const, std::uint32_t k, double alpha, double eps) {
  return ceil_u32(r_const * k / (alpha * alpha) / (eps * eps) * std::log2(k + 2.0));
}

std::uint64_t large_colors(std::uint32_t k, double alpha) {
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(2.0 * k / alpha - 1e-9)));
}

std::uint32_t semi_levels(std::uint64_t n) {
  std::uint32_t lg = 0;
  while ((1ULL << lg) < n) ++lg;
  return lg + 1;
}

std::uint32_t weight_levels(double w_max, double eps) {
  return 1 + static_cast<std::uint32_t>(std::max(0.0, std::ceil(std::log(w_max) / std::log1p(eps) - 1e-9)));
}

double round_weight(double w, double eps) {
  const double i = std::ceil(std::log(w) / std::log1p(eps) - 1e-9);
  return std::pow(1.0 + eps, i);
}

std::uint32_t arboricity_k(std::uint64_t n) { return ceil_u32(2.0 * std::pow(static_cast<double>(n), 0.4)); }

double arboricity_p(double p_const, double eps, std::uint64_t n) {
  return std::min(1.0, p_const / (eps * eps) * std::pow(static_cast<double>(n), -0.2));
}

// ---------------------------------------------------------------------------

Pipeline::Pipeline(AlgoParams params, std::uint64_t n, std::uint32_t max_arity)
    : Pipeline(params, n, max_arity, true) {}

Pipeline::Pipeline(AlgoParams params, std::uint64_t n, std::uint32_t max_arity, bool do_build)
    : params_(params), n_(n), max_arity_(max_arity) {
  params_.validate();
  if (n_ == 0) throw InputError("n must be at least 1");
  if (do_build) build();
}

void Pipeline::build() {
  const auto& p = params_;
  auto cfg = [&](std::uint64_t b, std::uint32_t d, std::uint32_t r, CellMode mode, std::uint64_t index) {
    SampleConfig c;
    c.b = b;
    c.d = d;
    c.r = r;
    c.cell_mode = p.cell_mode.value_or(mode);
    c.seed = derive_seed(derive_seed(p.seed, kSketchTag), index);
    c.n = n_;
    c.delta = p.delta;
    return c;
  };
  auto large = [&](std::uint32_t k, double alpha, std::uint64_t index) {
    auto c = cfg(large_colors(k, alpha), 1, large_reps(p.r_const, k, alpha, p.eps), CellMode::l0, index);
    c.independence_t = std::max<std::uint32_t>(2, std::min(2 * k, p.t_cap));
    return c;
  };
  const auto exact_b = static_cast<std::uint64_t>(std::ceil(p.b_const * p.k));

  switch (p.mode) {
    case Mode::exact_matching:
    case Mode::weighted_matching:
      sketches_.emplace_back(cfg(exact_b, 2, exact_reps(p.r_const, p.k), CellMode::xor_unique, 0));
      break;
    case Mode::large_matching:
      sketches_.emplace_back(large(p.k, p.alpha, 0));
      break;
    case Mode::semi_streaming:
    case Mode::weighted_large: {
      const std::uint32_t levels = semi_levels(n_);
      const std::uint32_t wl = p.mode == Mode::weighted_large ? weight_levels(p.w_max, p.eps) : 1;
      for (std::uint32_t j = 0; j < wl; ++j)
        for (std::uint32_t i = 0; i < levels; ++i) {
          const std::uint32_t k = 1U << i;
          sketches_.emplace_back(large(k, std::min(p.alpha, std::sqrt(static_cast<double>(k))), j * levels + i));
        }
      break;
    }
    case Mode::arboricity: {
      const auto k = arboricity_k(n_);
      sketches_.emplace_back(
          cfg(static_cast<std::uint64_t>(std::ceil(p.b_const * k)), 2, exact_reps(p.r_const, k), CellMode::xor_unique, 0));
      sampled_ = 0;
      for (VertexId v = 0; v < n_; ++v) sampled_ += member(v) ? 1 : 0;
      induced_.emplace(std::max<std::uint64_t>(1, 2ULL * p.nu * sampled_), p.delta, derive_seed(p.seed, kInducedTag));
      break;
    }
    case Mode::hitting_set:
    case Mode::hypergraph_matching:
      sketches_.emplace_back(cfg(exact_b, p.d, exact_reps(p.r_const, p.k), CellMode::l0, 0));
      break;
    case Mode::contraction:
      sketches_.emplace_back(cfg(4ULL * p.k * p.k, 2, p.reps, CellMode::counter, 0));
      break;
  }
}

bool Pipeline::member(VertexId v) const {
  const double p = arboricity_p(params_.p_const, params_.eps, n_);
  if (p >= 1.0) return true;
  const std::uint64_t h = mix64(derive_seed(params_.seed, kMemberTag) ^ v);
  return static_cast<double>(h >> 11) * 0x1.0p-53 < p;
}

void Pipeline::update(const EdgeUpdate& upd) {
  const Hyperedge e = canonical_edge(upd.vertices, n_);
  if (upd.delta != 1 && upd.delta != -1) throw InputError("update delta must be +1 or -1");
  const Mode m = params_.mode;
  const bool hyper = m == Mode::hitting_set || m == Mode::hypergraph_matching;
  if (hyper && e.size() > params_.d)
    throw InputError("edge arity " + num(e.size()) + " exceeds d = " + num(params_.d));
  if (!hyper && e.size() != 2) throw InputError(to_string(m) + " needs edges with two vertices");
  const double w = cardinality_mode(m) ? 1.0 : upd.weight;

  switch (m) {
    case Mode::weighted_matching:
      sketches_[0].update(e, params_.round ? round_weight(w, params_.eps) : w, upd.delta);
      break;
    case Mode::weighted_large: {
      if (!(w >= 1.0) || w > params_.w_max * (1 + 1e-12))
        throw InputError("weighted-large needs weights in [1, w_max]");
      const std::uint32_t levels = semi_levels(n_);
      const std::uint32_t wl = weight_levels(params_.w_max, params_.eps);
      for (std::uint32_t j = 0; j < wl && std::pow(1.0 + params_.eps, j) <= w * (1 + 1e-12); ++j)
        for (std::uint32_t i = 0; i < levels; ++i) sketches_[j * levels + i].update(e, 1.0, upd.delta);
      break;
    }
    case Mode::arboricity: {
      sketches_[0].update(e, 1.0, upd.delta);
      const bool a = member(e[0]), b = member(e[1]);
      for (int i = 0; i < 2; ++i) {
        if (!(i == 0 ? a : b)) continue;
        auto it = degrees_.try_emplace(e[i], 0).first;
        it->second += upd.delta;
        if (it->second == 0) degrees_.erase(it);
      }
      if (a && b) induced_->update(encode_edge(e, n_), upd.delta);
      break;
    }
    default:
      for (auto& sk : sketches_) sk.update(e, w, upd.delta);
  }
}

void Pipeline::merge(const Pipeline& other) {
  if (!(params_ == other.params_) || n_ != other.n_ || max_arity_ != other.max_arity_)
    throw MergeError("pipelines have different parameters, seeds or n");
  for (std::size_t i = 0; i < sketches_.size(); ++i) sketches_[i].merge(other.sketches_[i]);
  for (const auto& [v, d] : other.degrees_) {
    auto it = degrees_.try_emplace(v, 0).first;
    it->second += d;
    if (it->second == 0) degrees_.erase(it);
  }
  if (induced_) induced_->merge(*other.induced_);
}

SpaceReport Pipeline::space_report() const {
  SpaceReport total;
  for (const auto& sk : sketches_) {
    const auto s = sk.space_report();
    total.cells += s.cells;
    total.bytes += s.bytes;
    total.weight_classes = std::max(total.weight_classes, s.weight_classes);
    if (sketches_.size() == 1) total.cells_per_rep = s.cells_per_rep;
  }
  if (induced_) {
    ByteWriter w;
    induced_->serialize(w);
    total.bytes += w.bytes().size() + 16 * degrees_.size();
  }
  return total;
}

EstimateReport Pipeline::finish() const {
  EstimateReport r;
  switch (params_.mode) {
    case Mode::exact_matching: r = finish_exact(); break;
    case Mode::weighted_matching: r = finish_weighted(); break;
    case Mode::large_matching: r = finish_large(); break;
    case Mode::semi_streaming: r = finish_semi(); break;
    case Mode::weighted_large: r = finish_weighted_large(); break;
    case Mode::arboricity: r = finish_arboricity(); break;
    case Mode::hitting_set:
    case Mode::hypergraph_matching: r = finish_hitting(); break;
    case Mode::contraction: r = finish_contraction(); break;
  }
  r.mode = params_.mode;
  add_space(r, space_report());
  return r;
}

EstimateReport Pipeline::finish_exact() const {
  EstimateReport r;
  const auto& sk = sketches_[0];
  const auto sub = sk.extract_subgraph();
  const auto kernel = compact(kernel_edges(sub));
  const auto m = relabel(max_matching(kernel.g), kernel.label);
  const auto vc = min_vertex_cover(kernel.g, 2ULL * params_.k);
  r.value = static_cast<double>(m.size);
  r.certificate = m;
  r.components["matching"] = static_cast<double>(m.size);
  r.components["vertex_cover"] = vc ? static_cast<double>(vc->size) : -1.0;
  r.components["kernel_edges"] = static_cast<double>(kernel.g.edges.size());
  r.components["b"] = static_cast<double>(sk.config().b);
  r.components["r"] = sk.config().r;
  r.components["corrupt_cells"] = static_cast<double>(sub.corrupt_cells);
  if (vc) {
    r.cover = relabel(*vc, kernel.label);
  } else {
    r.flags.push_back("vertex_cover_exceeds_budget");
    r.success = false;
  }
  if (m.size > params_.k) {
    r.flags.push_back("promise_violation");
    r.success = false;
  }
  if (sub.corrupt_cells > 0) r.flags.push_back("corrupt_cells");
  return r;
}

EstimateReport Pipeline::finish_weighted() const {
  EstimateReport r;
  const auto& sk = sketches_[0];
  const auto sub = sk.extract_subgraph();
  const auto kernel = compact(kernel_edges(sub));
  const auto m = relabel(max_weight_matching(kernel.g), kernel.label);
  r.value = m.total_weight;
  r.certificate = m;
  r.components["weight"] = m.total_weight;
  r.components["matching_size"] = static_cast<double>(m.size);
  r.components["weight_classes"] = static_cast<double>(sk.weight_classes().size());
  r.components["kernel_edges"] = static_cast<double>(kernel.g.edges.size());
  if (m.size > params_.k) {
    r.flags.push_back("promise_violation");
    r.success = false;
  }
  if (sub.corrupt_cells > 0) r.flags.push_back("corrupt_cells");
  return r;
}

Solution greedy_color_matching(const SampleSketch& sk) {
  auto sub = sk.extract_subgraph();
  std::sort(sub.edges.begin(), sub.edges.end(), [](const SampledEdge& a, const SampledEdge& b) {
    return a.rep != b.rep ? a.rep < b.rep : a.colors < b.colors;
  });
  Solution m;
  m.kind = Solution::Kind::matching;
  std::unordered_set<VertexId> matched;
  std::size_t i = 0;
  while (i < sub.edges.size()) {
    const std::uint32_t rep = sub.edges[i].rep;
    const auto& h = sk.hashes()[rep];
    std::unordered_set<std::uint32_t> used;
    for (auto v : matched) used.insert(h.eval(v));
    for (; i < sub.edges.size() && sub.edges[i].rep == rep; ++i) {
      const auto& e = sub.edges[i];
      if (e.colors.size() != 1 || used.count(e.colors[0])) continue;
      if (std::any_of(e.vertices.begin(), e.vertices.end(), [&](VertexId v) { return matched.count(v) > 0; }))
        continue;
      used.insert(e.colors[0]);
      matched.insert(e.vertices.begin(), e.vertices.end());
      m.edges.push_back({e.vertices, 1.0});
    }
  }
  std::sort(m.edges.begin(), m.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.vertices < b.vertices; });
  m.size = m.edges.size();
  m.total_weight = static_cast<double>(m.size);
  return m;
}

EstimateReport Pipeline::finish_large() const {
  EstimateReport r;
  const auto m = greedy_color_matching(sketches_[0]);
  r.value = static_cast<double>(m.size);
  r.certificate = m;
  const auto& c = sketches_[0].config();
  r.components["matching"] = static_cast<double>(m.size);
  r.components["b"] = static_cast<double>(c.b);
  r.components["r"] = c.r;
  r.components["t"] = c.independence_t;
  return r;
}

EstimateReport Pipeline::finish_semi() const {
  EstimateReport r;
  Solution best;
  for (std::size_t i = 0; i < sketches_.size(); ++i) {
    const auto m = greedy_color_matching(sketches_[i]);
    r.components["level_" + num(1ULL << i)] = static_cast<double>(m.size);
    if (m.size > best.size) best = m;
  }
  r.value = static_cast<double>(best.size);
  r.certificate = best;
  r.components["levels"] = static_cast<double>(sketches_.size());
  return r;
}

EstimateReport Pipeline::finish_weighted_large() const {
  // Best cardinality matching per weight level, combined greedily from the
  // heaviest level down; an edge taken at level j is credited (1 + eps)^j.
  EstimateReport r;
  const std::uint32_t levels = semi_levels(n_);
  const std::uint32_t wl = weight_levels(params_.w_max, params_.eps);
  Solution out;
  out.kind = Solution::Kind::matching;
  std::unordered_set<VertexId> matched;
  for (std::uint32_t jj = wl; jj-- > 0;) {
    Solution best;
    for (std::uint32_t i = 0; i < levels; ++i) {
      auto m = greedy_color_matching(sketches_[jj * levels + i]);
      if (m.size > best.size) best = std::move(m);
    }
    r.components["weight_level_" + num(jj)] = static_cast<double>(best.size);
    const double w = std::pow(1.0 + params_.eps, jj);
    for (const auto& e : best.edges) {
      if (matched.count(e.vertices[0]) || matched.count(e.vertices[1])) continue;
      matched.insert(e.vertices.begin(), e.vertices.end());
      out.edges.push_back({e.vertices, w});
      out.total_weight += w;
    }
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.vertices < b.vertices; });
  out.size = out.edges.size();
  r.value = out.total_weight;
  r.certificate = out;
  r.components["weight_levels"] = wl;
  return r;
}

EstimateReport Pipeline::finish_arboricity() const {
  EstimateReport r;
  const auto& sk = sketches_[0];
  const auto k = arboricity_k(n_);
  const auto sub = sk.extract_subgraph();
  const auto kernel = compact(kernel_edges(sub));
  const auto m = relabel(max_matching(kernel.g), kernel.label);
  if (m.size > k) r.flags.push_back("promise_violation");

  const std::int64_t thr = 2LL * params_.nu + 3;
  const double p = arboricity_p(params_.p_const, params_.eps, n_);
  std::uint64_t hz = 0;
  for (const auto& [v, d] : degrees_)
    if (d >= thr) ++hz;
  auto deg = [&](VertexId v) {
    const auto it = degrees_.find(v);
    return it == degrees_.end() ? std::int64_t{0} : it->second;
  };
  std::uint64_t sz = 0;
  const auto dec = induced_->decode();
  if (!dec.ok || dec.overflow) {
    r.flags.push_back("sparse_recovery_failed");
    r.success = false;
  } else {
    for (const auto& [key, mult] : dec.entries) {
      if (mult != 1) continue;
      const auto e = decode_edge(key, n_);
      if (e.size() == 2 && deg(e[0]) < thr && deg(e[1]) < thr) ++sz;
    }
  }
  if (static_cast<double>(thr) > 1.0 / p) r.flags.push_back("small_sample_regime");

  const double h_est = static_cast<double>(hz) / p;
  const double s_est = static_cast<double>(sz) / (p * p);
  r.value = std::max({static_cast<double>(m.size), h_est, s_est});
  r.certificate = m;
  r.components["r"] = static_cast<double>(m.size);
  r.components["h_Z"] = static_cast<double>(hz);
  r.components["s_Z"] = static_cast<double>(sz);
  r.components["h_Z/p"] = h_est;
  r.components["s_Z/p^2"] = s_est;
  r.components["p"] = p;
  r.components["k"] = k;
  r.components["sampled_vertices"] = static_cast<double>(sampled_);
  return r;
}

EstimateReport Pipeline::finish_hitting() const {
  EstimateReport r;
  const auto& sk = sketches_[0];
  const auto sub = sk.extract_subgraph();
  const auto kernel = compact(kernel_edges(sub));
  r.components["kernel_edges"] = static_cast<double>(kernel.g.edges.size());
  r.components["failed_cells"] = static_cast<double>(sub.failed_cells);
  r.components["b"] = static_cast<double>(sk.config().b);
  r.components["r"] = sk.config().r;
  if (sub.failed_cells > 0) r.flags.push_back("failed_cells");
  if (params_.mode == Mode::hitting_set) {
    const auto hs = min_hitting_set(kernel.g, params_.k);
    if (!hs) {
      r.value = -1;
      r.flags.push_back("promise_violation");
      r.success = false;
      return r;
    }
    r.certificate = relabel(*hs, kernel.label);
    r.value = static_cast<double>(hs->size);
  } else {
    const auto m = relabel(max_hypergraph_matching(kernel.g, params_.k), kernel.label);
    r.certificate = m;
    r.value = static_cast<double>(m.size);
    if (m.size * params_.d > params_.k) {
      r.flags.push_back("promise_violation");
      r.success = false;
    }
  }
  return r;
}

EstimateReport Pipeline::finish_contraction() const {
  EstimateReport r;
  const auto graphs = sketches_[0].extract_contracted();
  std::optional<Solution> best;
  const ContractedGraph* best_graph = nullptr;
  for (const auto& cg : graphs) {
    std::vector<WeightedEdge> es;
    for (const auto& ce : cg.edges)
      es.push_back({ce.a == ce.b ? Hyperedge{ce.a} : Hyperedge{ce.a, ce.b}, 1.0});
    const auto g = make_graph(cg.b, std::move(es));
    auto s = solve_contraction_property(g, params_.prop);
    r.components["trial_" + num(cg.rep)] = static_cast<double>(s.size);
    if (!best || s.size > best->size) {
      best = std::move(s);
      best_graph = &cg;
    }
  }
  r.certificate = best;
  r.value = best ? static_cast<double>(best->size) : 0.0;
  r.components["b"] = static_cast<double>(sketches_[0].config().b);
  if (best) {
    for (const auto& e : best->edges) {
      std::optional<Hyperedge> rep;
      for (const auto& ce : best_graph->edges)
        if (e.vertices.size() == 2 && ce.a == e.vertices[0] && ce.b == e.vertices[1]) rep = ce.representative;
      r.representatives.push_back(rep);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void write_params(ByteWriter& out, const AlgoParams& p) {
  out.u8(static_cast<std::uint8_t>(p.mode));
  out.u32(p.k);
  out.f64(p.alpha);
  out.f64(p.eps);
  out.u32(p.nu);
  out.u32(p.d);
  out.f64(p.r_const);
  out.f64(p.b_const);
  out.f64(p.p_const);
  out.u32(p.t_cap);
  out.u32(p.reps);
  out.u8(p.cell_mode ? static_cast<std::uint8_t>(*p.cell_mode) : 0xff);
  out.u8(p.round ? 1 : 0);
  out.f64(p.w_max);
  out.u8(static_cast<std::uint8_t>(p.prop.kind));
  out.u32(p.prop.param);
  out.f64(p.delta);
  out.u64(p.seed);
}

AlgoParams read_params(ByteReader& in) {
  AlgoParams p;
  const auto mode = in.u8();
  if (mode > static_cast<std::uint8_t>(Mode::contraction)) throw FormatError("pipeline: unknown mode");
  p.mode = static_cast<Mode>(mode);
  p.k = in.u32();
  p.alpha = in.f64();
  p.eps = in.f64();
  p.nu = in.u32();
  p.d = in.u32();
  p.r_const = in.f64();
  p.b_const = in.f64();
  p.p_const = in.f64();
  p.t_cap = in.u32();
  p.reps = in.u32();
  const auto cm = in.u8();
  if (cm != 0xff) {
    if (cm > static_cast<std::uint8_t>(CellMode::l0)) throw FormatError("pipeline: unknown cell mode");
    p.cell_mode = static_cast<CellMode>(cm);
  }
  p.round = in.u8() != 0;
  p.w_max = in.f64();
  const auto pk = in.u8();
  if (pk > static_cast<std::uint8_t>(PropertySpec::Kind::k_colorable)) throw FormatError("pipeline: unknown property");
  p.prop.kind = static_cast<PropertySpec::Kind>(pk);
  p.prop.param = in.u32();
  p.delta = in.f64();
  p.seed = in.u64();
  return p;
}

}  // namespace

void Pipeline::serialize(ByteWriter& out) const {
  write_params(out, params_);
  out.u64(n_);
  out.u32(max_arity_);
  out.u64(sketches_.size());
  for (const auto& sk : sketches_) sk.serialize(out);
  out.u64(sampled_);
  out.u64(degrees_.size());
  for (const auto& [v, d] : degrees_) {
    out.u64(v);
    out.i64(d);
  }
  out.u8(induced_ ? 1 : 0);
  if (induced_) induced_->serialize(out);
}

Pipeline Pipeline::deserialize(ByteReader& in) {
  AlgoParams params;
  try {
    params = read_params(in);
    params.validate();
  } catch (const InputError& e) {
    throw FormatError(std::string("pipeline parameters: ") + e.what());
  }
  const auto n = in.u64();
  const auto arity = in.u32();
  if (n == 0) throw FormatError("pipeline: n is zero");
  Pipeline p(params, n, arity, true);
  const auto count = in.count(1);
  if (count != p.sketches_.size()) throw FormatError("pipeline: sketch count does not match parameters");
  for (auto& sk : p.sketches_) {
    auto loaded = SampleSketch::deserialize(in);
    if (!(loaded.config() == sk.config())) throw FormatError("pipeline: sketch configuration does not match parameters");
    sk = std::move(loaded);
  }
  if (in.u64() != p.sampled_) throw FormatError("pipeline: sampled vertex count mismatch");
  const auto degs = in.count(16);
  for (std::uint64_t i = 0; i < degs; ++i) {
    const auto v = in.u64();
    const auto d = in.i64();
    if (v >= n || d == 0 || !p.member(v)) throw FormatError("pipeline: bad degree entry");
    p.degrees_[v] = d;
  }
  const bool has_induced = in.u8() != 0;
  if (has_induced != p.induced_.has_value()) throw FormatError("pipeline: sparse recovery presence mismatch");
  if (has_induced) {
    auto loaded = SparseRecovery::deserialize(in);
    if (!(loaded.shape() == p.induced_->shape())) throw FormatError("pipeline: sparse recovery shape mismatch");
    p.induced_ = std::move(loaded);
  }
  return p;
}

bool Pipeline::operator==(const Pipeline& o) const {
  return params_ == o.params_ && n_ == o.n_ && max_arity_ == o.max_arity_ && sketches_ == o.sketches_ &&
         degrees_ == o.degrees_ && induced_ == o.induced_ && sampled_ == o.sampled_;
}

EstimateReport run_pipeline(const Stream& s, const AlgoParams& params) {
  Pipeline p(params, s.n, s.max_arity);
  for (const auto& u : s.updates) p.update(u);
  return p.finish();
}

}  // namespace gsample
