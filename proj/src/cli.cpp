#include "gsample/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "gsample/binary_io.hpp"
#include "gsample/stream_io.hpp"

namespace gsample {

using nlohmann::json;

std::uint64_t default_seed() {
  const char* s = std::getenv(kSeedEnv);
  if (s == nullptr || *s == '\0') return 1;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  return *end == '\0' ? v : 1;
}

namespace {

json solution_json(const Solution& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["size"] = s.size;
  j["total_weight"] = s.total_weight;
  json edges = json::array();
  for (const auto& e : s.edges) edges.push_back({{"vertices", e.vertices}, {"weight", e.weight}});
  j["edges"] = edges;
  j["vertices"] = s.vertices;
  if (!s.labels.empty()) j["labels"] = s.labels;
  return j;
}

json params_json(const AlgoParams& p) {
  return {
      {"mode", to_string(p.mode)},
      {"k", p.k},
      {"alpha", p.alpha},
      {"eps", p.eps},
      {"nu", p.nu},
      {"d", p.d},
      {"r_const", p.r_const},
      {"b_const", p.b_const},
      {"p_const", p.p_const},
      {"t_cap", p.t_cap},
      {"reps", p.reps},
      {"cell_mode", p.cell_mode ? json(to_string(*p.cell_mode)) : json(nullptr)},
      {"round", p.round},
      {"w_max", p.w_max},
      {"prop", to_string(p.prop)},
      {"delta", p.delta},
      {"seed", p.seed},
  };
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

Stream read_stream_input(const std::string& path) {
  const auto bytes = read_bytes(path);
  if (has_sketch_magic(bytes)) throw InputError(path + " is a sketch file, not a stream");
  return parse_stream_text(std::string(bytes.begin(), bytes.end()));
}

struct AlgoOpts {
  AlgoParams p;
  std::string mode = "exact-matching";
  std::string cell_mode;
  std::string prop = "b_matching:1";
  std::uint64_t n = 0;
  std::uint32_t arity = 0;

  void add(CLI::App* app) {
    app->add_option("--mode", mode, "Algorithm")->capture_default_str();
    app->add_option("--k", p.k, "Promise parameter")->capture_default_str();
    app->add_option("--alpha", p.alpha, "Approximation parameter alpha")->capture_default_str();
    app->add_option("--eps", p.eps, "Accuracy parameter")->capture_default_str();
    app->add_option("--nu", p.nu, "Arboricity bound")->capture_default_str();
    app->add_option("--d", p.d, "Hyperedge arity")->capture_default_str();
    app->add_option("--reps", p.reps, "Contraction trials")->capture_default_str();
    app->add_option("--b-const", p.b_const, "Colors per unit of k")->capture_default_str();
    app->add_option("--r-const", p.r_const, "Repetition constant")->capture_default_str();
    app->add_option("--p-const", p.p_const, "Arboricity sampling constant")->capture_default_str();
    app->add_option("--t-cap", p.t_cap, "Hash independence cap for large-matching")->capture_default_str();
    app->add_option("--cell-mode", cell_mode, "counter, xor_unique or l0");
    app->add_option("--prop", prop, "Contraction property")->capture_default_str();
    app->add_option("--w-max", p.w_max, "Largest weight (weighted-large)");
    app->add_flag("--round", p.round, "Round weights to powers of 1+eps");
    app->add_option("--delta", p.delta, "Per-cell failure probability")->capture_default_str();
    app->add_option("--seed", p.seed, "Seed; default from GSAMPLE_SEED")->capture_default_str();
  }

  void add_shape(CLI::App* app) {
    app->add_option("--n", n, "Vertex count; default from the stream");
    app->add_option("--arity", arity, "Largest hyperedge arity; default from the stream");
  }

  AlgoParams resolve() {
    p.mode = parse_mode(mode);
    p.prop = parse_property(prop);
    if (!cell_mode.empty()) p.cell_mode = parse_cell_mode(cell_mode);
    p.validate();
    return p;
  }

  void shape(Stream& s) const {
    if (n > 0) {
      if (n < s.n) throw InputError("--n is smaller than the stream's vertex range");
      s.n = n;
    }
    if (arity > 0) {
      if (arity < s.max_arity) throw InputError("--arity is smaller than the stream's arity");
      s.max_arity = arity;
    }
  }
};

struct GenOpts {
  GeneratorSpec g;
  CLI::Option* family = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* churn = nullptr;
  CLI::Option* weights = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* b = nullptr;
  CLI::Option* m = nullptr;

  void add(CLI::App* app, const std::string& k_flag, bool with_shape_flags) {
    family = app->add_option("--family", g.family, "Generator family");
    n = app->add_option("--n", g.n, "Vertex count");
    k = app->add_option(k_flag, g.k, "Planted optimum");
    churn = app->add_option("--churn", g.churn, "Fraction of inserts later deleted");
    weights = app->add_option("--weights", g.weights, "Distinct weights 1..W");
    a = app->add_option("--a", g.a, "Left side (bipartite_complete)");
    b = app->add_option("--b", g.b, "Right side (bipartite_complete)");
    m = app->add_option("--m", g.m, "Edge count (random_gnm)");
    if (with_shape_flags) {
      app->add_option("--d", g.d, "Hyperedge arity")->capture_default_str();
      app->add_option("--nu", g.nu, "Arboricity")->capture_default_str();
    }
  }

  /// Overrides `base` with every flag given on the command line.
  GeneratorSpec apply(GeneratorSpec base) const {
    if (family->count()) base.family = g.family;
    if (n->count()) base.n = g.n;
    if (k->count()) base.k = g.k;
    if (churn->count()) base.churn = g.churn;
    if (weights->count()) base.weights = g.weights;
    if (a->count()) base.a = g.a;
    if (b->count()) base.b = g.b;
    if (m->count()) base.m = g.m;
    return base;
  }
};

Problem parse_problem(const std::string& s) {
  for (auto p : {Problem::matching, Problem::weighted_matching, Problem::vertex_cover, Problem::hitting_set,
                 Problem::hypergraph_matching, Problem::property})
    if (to_string(p) == s) return p;
  throw InputError("unknown problem: " + s);
}

}  // namespace

std::string report_document(const EstimateReport& r, const AlgoParams& params) {
  json j;
  j["schema"] = "gsample.result/1";
  j["mode"] = to_string(r.mode);
  j["value"] = r.value;
  j["success"] = r.success;
  j["flags"] = r.flags;
  j["certificate"] = r.certificate ? solution_json(*r.certificate) : json(nullptr);
  j["cover"] = r.cover ? solution_json(*r.cover) : json(nullptr);
  json reps = json::array();
  for (const auto& e : r.representatives) reps.push_back(e ? json(*e) : json(nullptr));
  j["representatives"] = reps;
  j["components"] = r.components;
  j["space"] = {{"cells", r.cells}, {"bytes", r.bytes}};
  j["params"] = params_json(params);
  return j.dump(2) + "\n";
}

std::string oracle_document(const Solution& s, Problem problem, const OracleParams& params, const HeavyShallow* hs,
                            std::uint32_t nu) {
  json j;
  j["schema"] = "gsample.result/1";
  j["mode"] = "oracle";
  j["value"] = problem == Problem::weighted_matching ? s.total_weight : static_cast<double>(s.size);
  j["success"] = true;
  j["flags"] = json::array();
  j["certificate"] = solution_json(s);
  j["cover"] = nullptr;
  j["representatives"] = json::array();
  json comp = json::object();
  if (hs) {
    comp["heavy"] = hs->heavy;
    comp["shallow"] = hs->shallow;
  }
  j["components"] = comp;
  j["space"] = nullptr;
  j["params"] = {{"problem", to_string(problem)}, {"prop", to_string(params.prop)}, {"budget", params.budget}, {"nu", nu}};
  return j.dump(2) + "\n";
}

std::string compare_document(const CompareResult& r, const CompareSpec& spec) {
  json j;
  j["schema"] = "gsample.compare/1";
  j["mode"] = to_string(r.mode);
  j["trials"] = r.trials.size();
  j["seconds"] = r.seconds;
  j["rates"] = r.rates;
  j["params"] = params_json(spec.params);
  j["generator"] = {{"family", spec.gen.family}, {"n", spec.gen.n},       {"k", spec.gen.k},
                    {"d", spec.gen.d},           {"nu", spec.gen.nu},     {"churn", spec.gen.churn},
                    {"weights", spec.gen.weights}};
  j["slack"] = spec.slack;
  json trials = json::array();
  for (const auto& t : r.trials) {
    json tj = {{"seed", t.seed}, {"value", t.value}, {"optimum", t.optimum},
               {"checks", t.checks}, {"flags", t.flags}, {"cells", t.cells}};
    if (!t.error.empty()) tj["error"] = t.error;
    trials.push_back(tj);
  }
  j["per_trial"] = trials;
  return j.dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling-based sketches for parameterized problems on dynamic graph streams", "gsample"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();
  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic stream");
  GenOpts gen_opts;
  gen_opts.g.seed = seed;
  gen_opts.add(gen, "--k", true);
  gen->add_option("--seed", gen_opts.g.seed, "Seed; default from GSAMPLE_SEED")->capture_default_str();
  gen->add_option("--out", out_path, "Output stream file (default stdout)");

  // sketch
  auto* sketch = app.add_subcommand("sketch", "Build a sketch file from a stream");
  AlgoOpts sk_opts;
  sk_opts.p.seed = seed;
  sk_opts.add(sketch);
  sk_opts.add_shape(sketch);
  std::string sk_in;
  sketch->add_option("input", sk_in, "Stream file or - for stdin")->required();
  sketch->add_option("--out", out_path, "Output sketch file")->required();

  // merge
  auto* merge = app.add_subcommand("merge", "Merge sketch files built with equal parameters");
  std::vector<std::string> merge_in;
  merge->add_option("inputs", merge_in, "Sketch files")->required();
  merge->add_option("--out", out_path, "Output sketch file")->required();

  // query
  auto* query = app.add_subcommand("query", "Run the algorithm on a sketch or stream file");
  AlgoOpts q_opts;
  q_opts.p.seed = seed;
  q_opts.add(query);
  q_opts.add_shape(query);
  std::string q_in;
  query->add_option("input", q_in, "Sketch or stream file; flags are ignored for sketches")->required();
  query->add_option("--out", out_path, "Result document (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact answer on the stream's final graph");
  std::string o_in, problem = "matching", o_prop = "b_matching:1";
  std::uint32_t o_nu = 1;
  std::size_t budget = 64;
  oracle->add_option("input", o_in, "Stream file or - for stdin")->required();
  oracle->add_option("--problem", problem,
                     "matching, weighted_matching, vertex_cover, hitting_set, hypergraph_matching or property")
      ->capture_default_str();
  oracle->add_option("--prop", o_prop, "Property for --problem property")->capture_default_str();
  oracle->add_option("--nu", o_nu, "Arboricity for the heavy/shallow counts")->capture_default_str();
  oracle->add_option("--budget", budget, "Cover size limit on large instances")->capture_default_str();
  oracle->add_option("--out", out_path, "Result document (default stdout)");

  // compare
  auto* compare = app.add_subcommand("compare", "Success rates of the algorithm against the oracle");
  AlgoOpts c_opts;
  c_opts.p.seed = seed;
  c_opts.add(compare);
  GenOpts c_gen;
  c_gen.add(compare, "--gen-k", false);
  CompareSpec cspec;
  std::string format = "table";
  compare->add_option("--trials", cspec.trials, "Seeds to run")->capture_default_str();
  compare->add_option("--slack", cspec.slack, "Slack on approximate lower bounds")->capture_default_str();
  compare->add_option("--format", format, "table or json")->capture_default_str()->check(CLI::IsMember({"table", "json"}));
  compare->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      const auto g = generate(gen_opts.g);
      std::string text;
      for (const auto& [name, v] : g.known) {
        std::ostringstream line;
        line << "# known " << name << ' ' << v << '\n';
        text += line.str();
      }
      text += format_stream(g.stream);
      emit(out_path, text, out);
    } else if (*sketch) {
      const auto params = sk_opts.resolve();
      auto s = read_stream_input(sk_in);
      sk_opts.shape(s);
      Pipeline p(params, s.n, s.max_arity);
      for (const auto& u : s.updates) p.update(u);
      write_bytes(out_path, to_bytes(p));
    } else if (*merge) {
      auto p = from_bytes<Pipeline>(read_bytes(merge_in.front()));
      for (std::size_t i = 1; i < merge_in.size(); ++i) p.merge(from_bytes<Pipeline>(read_bytes(merge_in[i])));
      write_bytes(out_path, to_bytes(p));
    } else if (*query) {
      const auto bytes = read_bytes(q_in);
      if (has_sketch_magic(bytes)) {
        const auto p = from_bytes<Pipeline>(bytes);
        emit(out_path, report_document(p.finish(), p.params()), out);
      } else {
        const auto params = q_opts.resolve();
        auto s = parse_stream_text(std::string(bytes.begin(), bytes.end()));
        q_opts.shape(s);
        emit(out_path, report_document(run_pipeline(s, params), params), out);
      }
    } else if (*oracle) {
      const auto s = read_stream_input(o_in);
      const auto g = materialize(s);
      OracleParams op;
      op.budget = budget;
      op.prop = parse_property(o_prop);
      const auto pr = parse_problem(problem);
      const auto sol = oracle_solve(g, pr, op);
      std::optional<HeavyShallow> hs;
      if (s.max_arity == 2) hs = heavy_shallow_counts(g, o_nu);
      emit(out_path, oracle_document(sol, pr, op, hs ? &*hs : nullptr, o_nu), out);
    } else if (*compare) {
      cspec.params = c_opts.resolve();
      cspec.seed = cspec.params.seed;
      cspec.gen = c_gen.apply(default_generator(cspec.params));
      const auto r = run_compare(cspec);
      emit(out_path, format == "json" ? compare_document(r, cspec) : format_compare_table(r), out);
    }
  } catch (const Error& e) {
    err << "gsample: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "gsample: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace gsample
