// Acceptance run: one PASS/FAIL line per criterion. `acceptance 3 5` runs
// only criteria 3 and 5.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gsample/binary_io.hpp"
#include "gsample/compare.hpp"
#include "gsample/oracle.hpp"
#include "gsample/rng.hpp"
#include "gsample/sample_sketch.hpp"
#include "gsample/stream_algorithms.hpp"
#include "test_util.hpp"
#include "toy_law.hpp"

using namespace gsample;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s [%s]\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double rate(const CompareResult& r, const std::string& check) {
  const auto it = r.rates.find(check);
  return it == r.rates.end() ? 0.0 : it->second;
}

CompareResult run(AlgoParams p, std::uint32_t trials, std::uint64_t seed,
                  const std::function<void(GeneratorSpec&)>& tweak = {}) {
  CompareSpec spec;
  spec.params = p;
  spec.gen = default_generator(p);
  if (tweak) tweak(spec.gen);
  spec.trials = trials;
  spec.seed = seed;
  return run_compare(spec);
}

// ---------------------------------------------------------------- 1

void criterion1() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  double worst_ratio = 0;
  for (std::uint32_t k : {2u, 4u, 8u}) {
    AlgoParams p;
    p.mode = Mode::exact_matching;
    p.k = k;
    const auto r = run(p, 100, 1000 + k);
    const double m = rate(r, "matching_equal"), vc = rate(r, "vc_equal"), cov = rate(r, "vc_covers");
    const double b = std::ceil(p.b_const * k);
    const double cell_bound = exact_reps(p.r_const, k) * (b * (b - 1) / 2 + b);
    std::size_t max_cells = 0;
    double max_kernel = 0;
    for (const auto& t : r.trials) {
      max_cells = std::max(max_cells, t.cells);
      if (auto it = t.components.find("kernel_edges"); it != t.components.end())
        max_kernel = std::max(max_kernel, it->second);
    }
    worst_ratio = std::max(worst_ratio, max_kernel / (k * k * std::log2(k + 1.0)));
    ok = ok && m >= 0.95 && vc >= 0.95 && cov >= 0.95 && static_cast<double>(max_cells) <= cell_bound &&
         rate(r, "certificate_valid") == 1.0;
    detail += "k=" + std::to_string(k) + " match " + fmt("%.2f", m) + " vc " + fmt("%.2f", vc) + " covers " +
              fmt("%.2f", cov) + " cells " + std::to_string(max_cells) + "<=" + fmt("%.0f", cell_bound) + "; ";
  }
  const double secs = since(start);
  ok = ok && secs < 60;
  detail += "max kernel edges/(k^2 log2(k+1)) " + fmt("%.2f", worst_ratio) + "; " + fmt("%.1f s", secs);
  report(1, ok, "exact matching and vertex cover, n=500, churn 0.3, k in {2,4,8}, 100 seeds", detail);
}

// ---------------------------------------------------------------- 2

void criterion2() {
  bool ok = true;
  std::string detail;
  for (bool round : {false, true}) {
    for (std::uint32_t k : {2u, 4u, 8u}) {
      AlgoParams p;
      p.mode = Mode::weighted_matching;
      p.k = k;
      p.round = round;
      if (round) p.eps = 0.1;
      const auto r = run(p, 100, 2000 + k + (round ? 100 : 0));
      const double v = rate(r, round ? "within_factor" : "weight_equal");
      ok = ok && v >= 0.95 && rate(r, "certificate_valid") == 1.0;
      detail += std::string(round ? "eps=0.1 " : "exact ") + "k=" + std::to_string(k) + " " + fmt("%.2f", v) + "; ";
    }
  }
  report(2, ok, "weighted matching with 5 weights, exact and rounded (factor 1.1)", detail);
}

// ---------------------------------------------------------------- 3

void criterion3() {
  AlgoParams p;
  p.mode = Mode::large_matching;
  p.k = 20;
  p.alpha = 2;
  p.eps = 0.5;
  bool ok = true;
  std::string detail;
  const auto kk = run(p, 100, 3000);
  const auto planted = run(p, 100, 3100, [](GeneratorSpec& g) {
    g.family = "planted_matching";
    g.n = 200;
    g.k = 20;
  });
  for (const auto* r : {&kk, &planted}) {
    const double meets = rate(*r, "meets_bound"), below = rate(*r, "not_above_oracle");
    ok = ok && meets >= 0.95 && below == 1.0 && rate(*r, "certificate_valid") == 1.0;
    detail += std::string(r == &kk ? "K20,20" : "planted n=200") + " >=5: " + fmt("%.2f", meets) +
              " <=opt: " + fmt("%.2f", below) + " " + fmt("%.0f s", r->seconds) + "; ";
  }
  report(3, ok, "large matching k=20, alpha=2, eps=0.5", detail);
}

// ---------------------------------------------------------------- 4

void criterion4() {
  AlgoParams p;
  p.mode = Mode::semi_streaming;
  p.alpha = 2;
  p.eps = 0.5;
  CompareSpec spec;
  spec.params = p;
  spec.gen = default_generator(p);
  spec.trials = 100;
  spec.seed = 4000;
  spec.slack = 0.25;
  const auto r = run_compare(spec);
  const double w = rate(r, "in_window");
  report(4, w >= 0.90 && rate(r, "certificate_valid") == 1.0,
         "semi-streaming estimate on a perfect matching, n=64, churn 0.3, alpha=2",
         "in [opt/(8*1.25), opt]: " + fmt("%.2f", w) + "; " + fmt("%.0f s", r.seconds));
}

// ---------------------------------------------------------------- 5

void criterion5() {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, std::uint32_t>> families{{"tree", 1}, {"grid", 2}, {"bounded_arboricity", 3}};
  for (const auto& [family, nu] : families) {
    for (std::uint64_t n : {1000ULL, 10000ULL}) {
      AlgoParams p;
      p.mode = Mode::arboricity;
      p.nu = nu;
      p.eps = 0.5;
      const auto r = run(p, 50, 5000 + n + nu, [&](GeneratorSpec& g) {
        g.family = family;
        g.n = n;
      });
      const double f = rate(r, "within_factor"), s = rate(r, "sandwich");
      ok = ok && f >= 0.90 && s == 1.0;
      detail += family + " n=" + std::to_string(n) + " factor " + fmt("%.2f", f) + " sandwich " + fmt("%.2f", s) + "; ";
    }
  }
  report(5, ok, "arboricity estimate within (5nu+9)(1+eps)^2, eps=0.5, 50 seeds", detail);
}

// ---------------------------------------------------------------- 6

void criterion6() {
  bool ok = true;
  std::string detail;
  for (std::uint32_t k = 1; k <= 4; ++k) {
    AlgoParams hs;
    hs.mode = Mode::hitting_set;
    hs.k = k;
    hs.d = 3;
    const auto a = run(hs, 100, 6000 + k);
    AlgoParams hm = hs;
    hm.mode = Mode::hypergraph_matching;
    hm.k = 3 * k;
    const auto b = run(hm, 100, 6100 + k);
    const double hs_size = rate(a, "size_equal"), hs_cov = rate(a, "covers");
    const double hm_size = rate(b, "size_equal"), hm_cert = rate(b, "certificate_valid");
    ok = ok && hs_size >= 0.95 && hs_cov >= 0.95 && hm_size >= 0.95 && hm_cert == 1.0;
    detail += "k=" + std::to_string(k) + " hs " + fmt("%.2f", hs_size) + "/" + fmt("%.2f", hs_cov) + " hm " +
              fmt("%.2f", hm_size) + "; ";
  }

  // d = 2 against the exact matching pipeline on the same streams.
  int agree = 0, total = 0;
  for (std::uint32_t k : {2u, 4u, 8u}) {
    AlgoParams ex;
    ex.mode = Mode::exact_matching;
    ex.k = k;
    auto gs = default_generator(ex);
    for (int i = 0; i < 100; ++i) {
      gs.seed = 6200 + static_cast<std::uint64_t>(i) + 1000ULL * k;
      ex.seed = gs.seed;
      const auto s = generate(gs).stream;
      const auto e = run_pipeline(s, ex);
      AlgoParams h = ex;
      h.mode = Mode::hitting_set;
      h.d = 2;
      h.k = 2 * k;
      AlgoParams m = ex;
      m.mode = Mode::hypergraph_matching;
      m.d = 2;
      const auto hv = run_pipeline(s, h).value;
      const auto mv = run_pipeline(s, m).value;
      ++total;
      if (e.cover && hv == static_cast<double>(e.cover->size) && mv == e.value) ++agree;
    }
  }
  const double agreement = static_cast<double>(agree) / total;
  ok = ok && agreement >= 0.95;
  detail += "d=2 agreement with exact pipeline " + fmt("%.2f", agreement);
  report(6, ok, "hitting set and hypergraph matching, d=3, n=300, k<=4, 100 seeds", detail);
}

// ---------------------------------------------------------------- 7

void criterion7() {
  bool ok = true;
  std::string detail;
  struct Case {
    std::string prop;
    GeneratorSpec gen;
  };
  std::vector<Case> cases(3);
  cases[0].prop = "b_matching:1";
  cases[0].gen.family = "planted_matching";
  cases[0].gen.n = 50;
  cases[0].gen.k = 6;
  cases[1].prop = "b_matching:2";
  cases[1].gen.family = "planted_matching";
  cases[1].gen.n = 50;
  cases[1].gen.k = 2;
  cases[2].prop = "max_forest";
  cases[2].gen.family = "random_gnm";
  cases[2].gen.n = 50;
  cases[2].gen.m = 6;
  for (auto& c : cases) {
    c.gen.churn = 0.3;
    AlgoParams p;
    p.mode = Mode::contraction;
    p.k = 6;
    p.reps = 5;
    p.prop = parse_property(c.prop);
    OracleParams op;
    op.prop = p.prop;
    int accepted = 0, equal = 0, skipped = 0;
    for (std::uint64_t seed = 7000; accepted < 100 && seed < 9000; ++seed) {
      c.gen.seed = seed;
      const auto s = generate(c.gen).stream;
      // Instances with an optimum above k are outside the promise.
      if (oracle_solve(materialize(s), Problem::property, op).size > p.k) {
        ++skipped;
        continue;
      }
      p.seed = seed;
      const auto t = check_report(s, p, run_pipeline(s, p), 0.25);
      ++accepted;
      if (t.checks.at("size_equal")) ++equal;
    }
    const double r = accepted ? static_cast<double>(equal) / accepted : 0.0;
    ok = ok && accepted == 100 && r >= 0.95;
    detail += c.prop + " " + fmt("%.2f", r) + " (" + std::to_string(skipped) + " instances with opt>6 redrawn); ";
  }
  report(7, ok, "contraction search, k=6, 5 trials, 100 seeds", detail);
}

// ---------------------------------------------------------------- 8

std::vector<EdgeUpdate> random_stream(SplitMix64& gen, std::uint64_t n, std::size_t length, bool delete_all) {
  std::vector<EdgeUpdate> out;
  std::map<Hyperedge, double> live;
  while (out.size() < length) {
    const VertexId u = gen.below(n), v = gen.below(n);
    if (u == v) continue;
    Hyperedge e{std::min(u, v), std::max(u, v)};
    if (auto it = live.find(e); it != live.end()) {
      out.push_back({e, it->second, -1});
      live.erase(it);
    } else {
      const double w = 1.0 + static_cast<double>(gen.below(3));
      out.push_back({e, w, +1});
      live[e] = w;
    }
  }
  if (delete_all)
    for (const auto& [e, w] : live) out.push_back({e, w, -1});
  return out;
}

void criterion8() {
  std::string detail;
  bool ok = true;

  // l0 uniformity over a support of 50 reached through deletions.
  {
    const int trials = 10000;
    std::map<u128, int> freq;
    int found = 0, outside = 0;
    for (int t = 0; t < trials; ++t) {
      L0Sampler s(derive_seed(0x81, static_cast<std::uint64_t>(t)), 0.01);
      for (int k = 0; k < 90; ++k) s.update(EdgeKey{static_cast<u128>(7 + 31 * k)}, +1);
      for (int k = 50; k < 90; ++k) s.update(EdgeKey{static_cast<u128>(7 + 31 * k)}, -1);
      const auto q = s.query();
      if (q.status != L0Query::Status::found) continue;
      ++found;
      if (q.key.value >= static_cast<u128>(7 + 31 * 50)) ++outside;
      ++freq[q.key.value];
    }
    double tv = 0;
    for (int k = 0; k < 50; ++k) {
      const auto it = freq.find(static_cast<u128>(7 + 31 * k));
      tv += std::abs((it == freq.end() ? 0.0 : static_cast<double>(it->second) / found) - 1.0 / 50);
    }
    tv /= 2;
    ok = ok && tv <= 0.05 && outside == 0;
    detail += "l0 TV " + fmt("%.3f", tv) + " (fail rate " + fmt("%.4f", 1.0 - static_cast<double>(found) / trials) + "); ";
  }

  // Extraction law at toy scale.
  {
    const std::vector<Hyperedge> triangle{{10, 20}, {10, 30}, {20, 30}};
    const std::vector<Hyperedge> star{{5, 6}, {5, 7}, {5, 8}, {5, 9}};
    const std::vector<Hyperedge> path{{1, 2}, {2, 3}, {3, 4}, {4, 5}};
    const double tv = std::max({testutil::extraction_tv(triangle, 3, 2, 10000, 0x82),
                                testutil::extraction_tv(star, 4, 2, 10000, 0x83),
                                testutil::extraction_tv(path, 2, 1, 10000, 0x84)});
    ok = ok && tv <= 0.05;
    detail += "toy extraction max TV " + fmt("%.3f", tv) + "; ";
  }

  // Merge homomorphism on random shardings.
  {
    int exact = 0;
    for (int i = 0; i < 100; ++i) {
      SplitMix64 gen(derive_seed(0x85, static_cast<std::uint64_t>(i)));
      const std::uint64_t n = 20 + gen.below(60);
      const auto ups = random_stream(gen, n, 50 + gen.below(300), false);
      const int shards = 2 + static_cast<int>(gen.below(5));
      std::vector<int> owner(ups.size());
      for (auto& o : owner) o = static_cast<int>(gen.below(static_cast<std::uint64_t>(shards)));
      bool same;
      if (i % 2 == 0) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.b = 2 + gen.below(30);
        cfg.d = 1 + static_cast<std::uint32_t>(gen.below(2));
        cfg.r = 1 + static_cast<std::uint32_t>(gen.below(4));
        cfg.cell_mode = static_cast<CellMode>(gen.below(3));
        cfg.seed = gen();
        SampleSketch whole(cfg);
        std::vector<SampleSketch> parts(static_cast<std::size_t>(shards), SampleSketch(cfg));
        for (std::size_t j = 0; j < ups.size(); ++j) {
          whole.update(ups[j].vertices, ups[j].weight, ups[j].delta);
          parts[static_cast<std::size_t>(owner[j])].update(ups[j].vertices, ups[j].weight, ups[j].delta);
        }
        for (int s = 1; s < shards; ++s) parts[0].merge(parts[static_cast<std::size_t>(s)]);
        same = to_bytes(parts[0]) == to_bytes(whole);
      } else {
        const Mode modes[] = {Mode::exact_matching, Mode::weighted_matching, Mode::large_matching, Mode::arboricity,
                              Mode::contraction};
        AlgoParams p;
        p.mode = modes[gen.below(5)];
        p.k = 4 + static_cast<std::uint32_t>(gen.below(3));
        p.alpha = 2;
        p.seed = gen();
        Pipeline whole(p, n, 2);
        std::vector<Pipeline> parts(static_cast<std::size_t>(shards), Pipeline(p, n, 2));
        for (std::size_t j = 0; j < ups.size(); ++j) {
          auto u = ups[j];
          if (p.mode != Mode::weighted_matching) u.weight = 1;
          whole.update(u);
          parts[static_cast<std::size_t>(owner[j])].update(u);
        }
        for (int s = shards - 1; s > 0; --s) parts[0].merge(parts[static_cast<std::size_t>(s)]);
        same = to_bytes(parts[0]) == to_bytes(whole);
      }
      exact += same ? 1 : 0;
    }
    ok = ok && exact == 100;
    detail += "bit-exact merges " + std::to_string(exact) + "/100; ";
  }

  // Streams whose every insert is deleted.
  {
    int empty = 0;
    for (int i = 0; i < 100; ++i) {
      SplitMix64 gen(derive_seed(0x86, static_cast<std::uint64_t>(i)));
      const std::uint64_t n = 10 + gen.below(50);
      const auto ups = random_stream(gen, n, 20 + gen.below(200), true);
      SampleConfig cfg;
      cfg.n = n;
      cfg.b = 2 + gen.below(20);
      cfg.d = 2;
      cfg.r = 3;
      cfg.cell_mode = i % 2 ? CellMode::l0 : CellMode::xor_unique;
      cfg.seed = gen();
      SampleSketch sk(cfg);
      AlgoParams p;
      p.k = 3;
      p.seed = cfg.seed;
      Pipeline pl(p, n, 2);
      for (const auto& u : ups) {
        sk.update(u.vertices, u.weight, u.delta);
        pl.update({u.vertices, 1.0, u.delta});
      }
      const auto sub = sk.extract_subgraph();
      const auto r = pl.finish();
      if (sk.cells().empty() && sub.edges.empty() && r.value == 0 && r.certificate && r.certificate->size == 0) ++empty;
    }
    ok = ok && empty == 100;
    detail += "all-delete streams empty " + std::to_string(empty) + "/100";
  }
  report(8, ok, "primitive correctness", detail);
}

// ---------------------------------------------------------------- 9

struct SolverCheck {
  long cases = 0, mismatches = 0;
  std::string first;

  void fail(const std::string& what) {
    if (mismatches++ == 0) first = what;
  }

  // Property solvers are compared on graphs with at most `prop_edges` edges.
  void graph(const SmallGraph& g, std::size_t prop_edges) {
    ++cases;
    const auto km = max_matching(g);
    const auto bm = brute_max_matching(g, false);
    if (km.size != bm.size || !is_matching(g, km)) fail("matching");

    const auto kw = max_weight_matching(g);
    const auto bw = brute_max_matching(g, true);
    if (std::abs(kw.total_weight - bw.total_weight) > 1e-9 || !is_matching(g, kw)) fail("weighted matching");

    const auto bh = brute_min_hitting_set(g);
    const auto kv = min_vertex_cover(g, bh.size);
    if (!kv || kv->size != bh.size || !is_vertex_cover(g, *kv)) fail("vertex cover");
    if (bh.size > 0 && min_vertex_cover(g, bh.size - 1)) fail("vertex cover below optimum");
    const auto kh = min_hitting_set(g, bh.size);
    if (!kh || kh->size != bh.size || !is_hitting_set(g, *kh)) fail("hitting set");

    if (g.edges.size() > prop_edges || !brute_fits(g, Problem::property)) return;
    for (const char* name : {"b_matching:1", "b_matching:2", "max_forest", "disjoint_paths", "k_colorable:2"}) {
      const auto prop = parse_property(name);
      const auto ks = solve_contraction_property(g, prop);
      const auto bs = brute_property(g, prop);
      if (ks.size != bs.size || !satisfies_property(g, ks, prop)) fail(name);
    }
  }

  void hypergraph(const SmallGraph& g) {
    ++cases;
    const auto bh = brute_min_hitting_set(g);
    const auto kh = min_hitting_set(g, bh.size);
    if (!kh || kh->size != bh.size || !is_hitting_set(g, *kh)) fail("hitting set (d=3)");
    if (bh.size > 0 && min_hitting_set(g, bh.size - 1)) fail("hitting set below optimum");
    const auto km = max_hypergraph_matching(g, g.edges.size());
    const auto bm = brute_max_matching(g, false);
    if (km.size != bm.size || !is_matching(g, km)) fail("hypergraph matching");
  }
};

SmallGraph weighted_from_mask(std::uint64_t n, std::uint64_t mask) {
  SplitMix64 gen(derive_seed(0x90, mask * 16 + n));
  std::vector<WeightedEdge> es;
  int bit = 0;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) es.push_back({{u, v}, 1.0 + static_cast<double>(gen.below(4))});
  return make_graph(n, std::move(es));
}

void criterion9() {
  const auto start = Clock::now();
  SolverCheck all;
  // Every labeled graph on up to 6 vertices.
  long exhaustive = 0;
  for (std::uint64_t n = 1; n <= 6; ++n) {
    const std::uint64_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      all.graph(weighted_from_mask(n, mask), 15);
      ++exhaustive;
    }
  }
  // Random graphs on 7 to 10 vertices.
  SplitMix64 gen(0x91);
  long mid = 0;
  for (int i = 0; i < 10000; ++i, ++mid) {
    const std::uint64_t n = 7 + gen.below(4);
    all.graph(testutil::random_graph(n, 0.1 + 0.8 * gen.unit(), gen, true), i % 20 == 0 ? 20 : 15);
  }
  // 500 random instances on at most 14 vertices, a fifth of them 3-uniform.
  long large = 0;
  for (int i = 0; i < 500; ++i, ++large) {
    const std::uint64_t n = 11 + gen.below(4);
    if (i % 5 == 4) {
      all.hypergraph(testutil::random_uniform_hypergraph(n, 4 + gen.below(20), 3, gen));
    } else {
      all.graph(testutil::random_graph(n, 0.05 + 0.5 * gen.unit(), gen, true), i % 20 == 0 ? 20 : 15);
    }
  }
  const bool ok = all.mismatches == 0;
  std::string detail = std::to_string(exhaustive) + " exhaustive graphs (n<=6), " + std::to_string(mid) +
                       " random on 7-10 vertices, " + std::to_string(large) + " random on 11-14 vertices; " +
                       std::to_string(all.mismatches) + " mismatches";
  if (!ok) detail += " (first: " + all.first + ")";
  detail += "; " + fmt("%.0f s", since(start));
  report(9, ok, "kernel solvers agree with exhaustive enumeration", detail);
}

// ---------------------------------------------------------------- 10

// Live cells of the exact-matching pipeline after inserting K_{k, n-k}.
std::pair<std::size_t, std::uint32_t> star_cells(std::uint32_t k, std::uint64_t n) {
  AlgoParams p;
  p.mode = Mode::exact_matching;
  p.k = k;
  p.seed = 10;
  Pipeline pl(p, n, 2);
  EdgeUpdate u;
  u.vertices.resize(2);
  for (VertexId a = 0; a < k; ++a)
    for (VertexId b = k; b < n; ++b) {
      u.vertices[0] = a;
      u.vertices[1] = b;
      pl.update(u);
    }
  return {pl.space_report().cells, exact_reps(p.r_const, k)};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void criterion10() {
  const auto start = Clock::now();
  std::vector<double> lk, lc, lper;
  std::string detail = "K_{k,n-k}, n=1e5: ";
  for (std::uint32_t k : {2u, 4u, 8u, 16u}) {
    const auto [cells, r] = star_cells(k, 100000);
    lk.push_back(std::log2(k));
    lc.push_back(std::log2(static_cast<double>(cells)));
    lper.push_back(std::log2(static_cast<double>(cells) / r));
    detail += "k=" + std::to_string(k) + " " + std::to_string(cells) + " cells (r=" + std::to_string(r) + "); ";
  }
  const double s = slope(lk, lc), s_rep = slope(lk, lper);
  std::vector<double> by_n;
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL})
    by_n.push_back(static_cast<double>(star_cells(2, n).first));
  const double hi = *std::max_element(by_n.begin(), by_n.end()), lo = *std::min_element(by_n.begin(), by_n.end());
  const double variation = (hi - lo) / hi;
  detail += "slope " + fmt("%.2f", s) + " (per repetition " + fmt("%.2f", s_rep) + "); k=2 over n in {1e3,1e4,1e5}: " +
            fmt("%.0f", by_n[0]) + "/" + fmt("%.0f", by_n[1]) + "/" + fmt("%.0f", by_n[2]) + ", variation " +
            fmt("%.3f", variation) + "; " + fmt("%.0f s", since(start));
  report(10, std::abs(s - 2.0) <= 0.3 && variation < 0.10, "space: cells quadratic in k, flat in n", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  for (int i = 1; i <= 10; ++i) {
    if (!only.empty() && !only.count(i)) continue;
    try {
      all[static_cast<std::size_t>(i - 1)]();
    } catch (const std::exception& e) {
      report(i, false, "error", e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
