#include "gsample/compare.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "gsample/oracle.hpp"

namespace gsample {

namespace {

bool live_disjoint(const MaterializedGraph& g, const Solution& m) {
  std::set<VertexId> used;
  for (const auto& e : m.edges) {
    if (!g.contains(e.vertices)) return false;
    for (auto v : e.vertices)
      if (!used.insert(v).second) return false;
  }
  return true;
}

bool hits_all(const MaterializedGraph& g, const Solution& c) {
  const std::set<VertexId> in(c.vertices.begin(), c.vertices.end());
  for (const auto& [e, w] : g.edges())
    if (std::none_of(e.begin(), e.end(), [&](VertexId v) { return in.count(v) > 0; })) return false;
  return true;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

GeneratorSpec default_generator(const AlgoParams& p) {
  GeneratorSpec g;
  g.churn = 0.3;
  switch (p.mode) {
    case Mode::exact_matching:
    case Mode::weighted_matching:
      g.family = "planted_matching";
      g.n = 500;
      g.k = p.k;
      g.weights = p.mode == Mode::weighted_matching ? 5 : 0;
      break;
    case Mode::large_matching:
      g.family = "bipartite_complete";
      g.a = g.b = p.k;
      g.n = 2ULL * p.k;
      break;
    case Mode::semi_streaming:
      g.family = "perfect_matching";
      g.n = 64;
      break;
    case Mode::weighted_large:
      g.family = "perfect_matching";
      g.n = 64;
      g.weights = 5;
      break;
    case Mode::arboricity:
      g.family = "bounded_arboricity";
      g.n = 1000;
      g.nu = p.nu;
      g.churn = 0.1;
      break;
    case Mode::hitting_set:
      g.family = "planted_hitting_set";
      g.n = 300;
      g.k = p.k;
      g.d = p.d;
      break;
    case Mode::hypergraph_matching:
      g.family = "planted_hitting_set";
      g.n = 300;
      g.k = std::max<std::uint32_t>(1, p.k / p.d);
      g.d = p.d;
      break;
    case Mode::contraction:
      g.family = "planted_matching";
      g.n = 50;
      g.k = std::max<std::uint32_t>(1, p.k / 2);
      break;
  }
  return g;
}

TrialResult check_report(const Stream& s, const AlgoParams& p, const EstimateReport& r, double slack) {
  TrialResult t;
  t.value = r.value;
  t.flags = r.flags;
  t.cells = r.cells;
  t.components = r.components;
  const auto g = materialize(s);
  const auto sg = g.to_graph();
  OracleParams op;
  op.budget = std::max<std::size_t>(64, 4ULL * p.k);
  op.prop = p.prop;
  const bool cert = r.certificate.has_value();

  switch (p.mode) {
    case Mode::exact_matching: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::matching, op).size);
      const double vc = static_cast<double>(oracle_solve(sg, Problem::vertex_cover, op).size);
      t.checks["matching_equal"] = r.value == t.optimum;
      t.checks["vc_equal"] = r.cover && static_cast<double>(r.cover->size) == vc;
      t.checks["vc_covers"] = r.cover && hits_all(g, *r.cover);
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::weighted_matching: {
      t.optimum = oracle_solve(sg, Problem::weighted_matching, op).total_weight;
      if (p.round) {
        const double f = 1 + p.eps;
        t.checks["within_factor"] = r.value <= t.optimum * f + 1e-9 && r.value * f >= t.optimum - 1e-9;
      } else {
        t.checks["weight_equal"] = near(r.value, t.optimum);
      }
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::large_matching: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::matching, op).size);
      const double bound = std::ceil((1 - p.eps) * p.k / (2 * p.alpha) - 1e-9);
      t.checks["meets_bound"] = r.value >= bound;
      t.checks["not_above_oracle"] = r.value <= t.optimum;
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::semi_streaming: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::matching, op).size);
      const double lower = t.optimum * (1 - p.eps) / (2 * p.alpha) / (1 + slack);
      t.checks["in_window"] = r.value >= lower && r.value <= t.optimum;
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::weighted_large: {
      t.optimum = oracle_solve(sg, Problem::weighted_matching, op).total_weight;
      const double beta = 2 * p.alpha * (1 + slack) / (1 - p.eps + 1e-12);
      t.checks["not_above_oracle"] = r.value <= t.optimum + 1e-9;
      t.checks["within_guarantee"] = r.value >= t.optimum / (2 * (1 + p.eps) * beta) - 1e-9;
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::arboricity: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::matching, op).size);
      const double f = (5.0 * p.nu + 9) * (1 + p.eps) * (1 + p.eps);
      t.checks["within_factor"] =
          t.optimum == 0 ? r.value == 0 : (r.value <= f * t.optimum && r.value * f >= t.optimum);
      const auto hs = heavy_shallow_counts(g, p.nu);
      const double mx = static_cast<double>(std::max(hs.heavy, hs.shallow));
      t.checks["sandwich"] = mx / (2.5 * p.nu + 4.5) <= t.optimum && t.optimum <= 2 * mx;
      const auto& c = r.components;
      t.checks["components_consistent"] = r.value == std::max({c.at("r"), c.at("h_Z/p"), c.at("s_Z/p^2")});
      break;
    }
    case Mode::hitting_set: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::hitting_set, op).size);
      t.checks["size_equal"] = r.value == t.optimum;
      t.checks["covers"] = cert && hits_all(g, *r.certificate);
      break;
    }
    case Mode::hypergraph_matching: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::hypergraph_matching, op).size);
      t.checks["size_equal"] = r.value == t.optimum;
      t.checks["certificate_valid"] = cert && live_disjoint(g, *r.certificate);
      break;
    }
    case Mode::contraction: {
      t.optimum = static_cast<double>(oracle_solve(sg, Problem::property, op).size);
      t.checks["size_equal"] = r.value == t.optimum;
      break;
    }
  }
  return t;
}

CompareResult run_compare(const CompareSpec& spec) {
  CompareResult out;
  out.mode = spec.params.mode;
  const auto start = std::chrono::steady_clock::now();
  std::map<std::string, int> passed;
  for (std::uint32_t i = 0; i < spec.trials; ++i) {
    const std::uint64_t seed = spec.seed + i;
    auto gen = spec.gen;
    gen.seed = seed;
    auto params = spec.params;
    params.seed = seed;
    TrialResult t;
    try {
      const auto g = generate(gen);
      t = check_report(g.stream, params, run_pipeline(g.stream, params), spec.slack);
    } catch (const Error& e) {
      t.error = e.what();
    }
    t.seed = seed;
    for (const auto& [name, ok] : t.checks) passed[name] += ok ? 1 : 0;
    out.trials.push_back(std::move(t));
  }
  // Checks missing from errored trials still count in the denominator.
  for (const auto& [name, count] : passed)
    out.rates[name] = spec.trials == 0 ? 0.0 : static_cast<double>(count) / spec.trials;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string format_compare_table(const CompareResult& r) {
  std::string s = "mode " + to_string(r.mode) + ", " + std::to_string(r.trials.size()) + " trials\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-22s %8s\n", "check", "rate");
  s += buf;
  for (const auto& [name, rate] : r.rates) {
    std::snprintf(buf, sizeof buf, "%-22s %8.3f\n", name.c_str(), rate);
    s += buf;
  }
  std::size_t errors = 0;
  for (const auto& t : r.trials) errors += t.error.empty() ? 0 : 1;
  std::snprintf(buf, sizeof buf, "%-22s %8zu\n%-22s %8.2f\n", "errors", errors, "seconds", r.seconds);
  s += buf;
  return s;
}

}  // namespace gsample
