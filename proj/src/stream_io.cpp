#include "gsample/stream_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>

#include "gsample/rng.hpp"

namespace gsample {

namespace {

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_uint(std::string_view t, std::uint64_t& out) {
  if (t.empty()) return false;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc{} && p == t.data() + t.size();
}

bool parse_double(std::string_view t, double& out) {
  if (t.empty()) return false;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc{} && p == t.data() + t.size();
}

}  // namespace

StreamReader::StreamReader(std::istream& in) : in_(in) {
  // The header is optional; without one n is unbounded and parse_stream
  // infers it from the largest id.
  header_.n = 0;
  header_.max_arity = 0;
  std::string text;
  if (!next_content_line(text)) return;
  const auto tok = tokenize(text);
  if (tok[0] != "n") {
    pending_text_ = std::move(text);
    pending_ = true;
    return;
  }
  if (tok.size() % 2 != 0) fail("header must be key/value pairs");
  header_.max_arity = 2;
  for (std::size_t i = 0; i < tok.size(); i += 2) {
    std::uint64_t v = 0;
    if (!parse_uint(tok[i + 1], v)) fail("bad header value '" + std::string(tok[i + 1]) + "'");
    if (tok[i] == "n") {
      if (v == 0) fail("n must be positive");
      header_.n = v;
    } else if (tok[i] == "arity") {
      if (v == 0 || v > 64) fail("arity must be in [1, 64]");
      header_.max_arity = static_cast<std::uint32_t>(v);
    } else if (tok[i] == "weighted") {
      if (v > 1) fail("weighted must be 0 or 1");
      header_.weighted = v == 1;
    } else {
      fail("unknown header key '" + std::string(tok[i]) + "'");
    }
  }
}

bool StreamReader::next_content_line(std::string& text) {
  while (std::getline(in_, text)) {
    ++line_;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.resize(hash);
    if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

void StreamReader::fail(const std::string& why) const {
  throw FormatError("line " + std::to_string(line_) + ": " + why);
}

bool StreamReader::next(EdgeUpdate& out) {
  std::string text;
  if (pending_) {
    text = std::move(pending_text_);
    pending_ = false;
  } else if (!next_content_line(text)) {
    return false;
  }
  auto tok = tokenize(text);
  if (tok[0] != "+" && tok[0] != "-") fail("update must start with '+' or '-'");
  out.delta = tok[0] == "+" ? +1 : -1;
  out.weight = 1.0;
  bool have_weight = false;
  tok.erase(tok.begin());

  if (!tok.empty() && tok.back().front() == '@') {
    if (!parse_double(tok.back().substr(1), out.weight)) fail("bad weight '" + std::string(tok.back()) + "'");
    have_weight = true;
    tok.pop_back();
  }
  if (!have_weight && !tok.empty()) {
    std::uint64_t dummy = 0;
    const bool integral = parse_uint(tok.back(), dummy);
    if (!integral || (header_.weighted && header_.max_arity == 2 && tok.size() == 3)) {
      if (!parse_double(tok.back(), out.weight)) fail("bad token '" + std::string(tok.back()) + "'");
      have_weight = true;
      tok.pop_back();
    }
  }
  if (tok.empty()) fail("update has no vertices");
  out.vertices.clear();
  for (auto t : tok) {
    std::uint64_t v = 0;
    if (!parse_uint(t, v)) fail("bad vertex id '" + std::string(t) + "'");
    if (header_.n != 0 && v >= header_.n)
      fail("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(header_.n) + ")");
    out.vertices.push_back(v);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  if (std::adjacent_find(out.vertices.begin(), out.vertices.end()) != out.vertices.end())
    fail("edge repeats a vertex");
  if (header_.max_arity != 0 && out.vertices.size() > header_.max_arity)
    fail("edge arity " + std::to_string(out.vertices.size()) + " exceeds header arity " +
         std::to_string(header_.max_arity));
  if (!std::isfinite(out.weight) || out.weight <= 0) fail("weight must be finite and positive");
  return true;
}

Stream parse_stream(std::istream& in) {
  StreamReader reader(in);
  Stream s;
  const auto& h = reader.header();
  EdgeUpdate u;
  std::uint64_t max_id = 0;
  std::size_t max_arity = 0;
  bool any_weight = false;
  while (reader.next(u)) {
    max_id = std::max(max_id, u.vertices.back());
    max_arity = std::max(max_arity, u.vertices.size());
    any_weight = any_weight || u.weight != 1.0;
    s.updates.push_back(u);
  }
  if (h.n != 0) {
    s.n = h.n;
    s.max_arity = h.max_arity;
    s.weighted = h.weighted;
  } else {
    s.n = s.updates.empty() ? 1 : max_id + 1;
    s.max_arity = static_cast<std::uint32_t>(std::max<std::size_t>(2, max_arity));
    s.weighted = any_weight;
  }
  return s;
}

Stream parse_stream_text(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

Stream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_stream(in);
}

void write_stream(std::ostream& out, const Stream& s) {
  out << "n " << s.n << " arity " << s.max_arity << " weighted " << (s.weighted ? 1 : 0) << '\n';
  char buf[40];
  for (const auto& u : s.updates) {
    out << (u.delta > 0 ? '+' : '-');
    for (auto v : u.vertices) out << ' ' << v;
    if (s.weighted || u.weight != 1.0) {
      std::snprintf(buf, sizeof buf, " @%.17g", u.weight);
      out << buf;
    }
    out << '\n';
  }
}

std::string format_stream(const Stream& s) {
  std::ostringstream out;
  write_stream(out, s);
  return out.str();
}

void write_stream_file(const std::string& path, const Stream& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_stream(out, s);
  if (!out) throw InputError("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[gen.below(i)]);
}

struct Builder {
  std::uint64_t n;
  std::uint32_t arity;
  SplitMix64 gen;
  std::vector<VertexId> perm;
  std::vector<Hyperedge> edges;
  std::set<Hyperedge> seen;

  Builder(std::uint64_t n_, std::uint32_t arity_, std::uint64_t seed, bool relabel)
      : n(n_), arity(arity_), gen(derive_seed(seed, 0x9e7)), perm(n_) {
    std::iota(perm.begin(), perm.end(), VertexId{0});
    if (relabel) shuffle(perm, gen);
  }

  bool add(Hyperedge e) {
    for (auto& v : e) v = perm[v];
    std::sort(e.begin(), e.end());
    if (!seen.insert(e).second) return false;
    edges.push_back(std::move(e));
    return true;
  }
};

void require(bool ok, const std::string& why) {
  if (!ok) throw InputError("generator: " + why);
}

void planted_matching(Builder& g, std::uint32_t k, std::map<std::string, double>& known) {
  // s stars and t triangles: every edge touches a hub or lies in a triangle,
  // so matching = s + t and vertex cover = s + 2t.
  const std::uint32_t t = k / 2;
  const std::uint32_t s = k - t;
  require(k == 0 || g.n >= 2ULL * s + 3ULL * t, "planted_matching needs n >= 2s + 3t");
  VertexId next = 0;
  std::vector<VertexId> hubs;
  for (std::uint32_t i = 0; i < s; ++i) {
    hubs.push_back(next);
    g.add({next, next + 1});
    next += 2;
  }
  for (std::uint32_t i = 0; i < t; ++i) {
    g.add({next, next + 1});
    g.add({next + 1, next + 2});
    g.add({next, next + 2});
    next += 3;
  }
  if (!hubs.empty()) {
    for (VertexId leaf = next; leaf < g.n; ++leaf) {
      g.add({hubs[g.gen.below(hubs.size())], leaf});
      if (g.gen.unit() < 0.3) g.add({hubs[g.gen.below(hubs.size())], leaf});
    }
    for (std::size_t i = 0; i < hubs.size(); ++i)
      for (std::size_t j = i + 1; j < hubs.size(); ++j)
        if (g.gen.unit() < 0.3) g.add({hubs[i], hubs[j]});
  }
  known["matching"] = k;
  known["vertex_cover"] = s + 2.0 * t;
}

void planted_hitting_set(Builder& g, std::uint32_t k, std::uint32_t d, std::map<std::string, double>& known) {
  // k sunflowers with k + 2 petals: any hitting set of size <= k must take
  // every core, and the petals give k disjoint edges.
  require(d >= 2, "planted_hitting_set needs d >= 2");
  const std::uint64_t need = k + std::uint64_t{k} * (k + 2) * (d - 1);
  require(g.n >= need + (k > 0 ? d - 1 : 0), "planted_hitting_set needs more vertices");
  std::vector<VertexId> cores;
  VertexId next = 0;
  for (std::uint32_t i = 0; i < k; ++i) cores.push_back(next++);
  for (auto c : cores) {
    for (std::uint32_t p = 0; p < k + 2; ++p) {
      Hyperedge e{c};
      for (std::uint32_t j = 0; j + 1 < d; ++j) e.push_back(next++);
      g.add(e);
    }
  }
  if (k > 0) {
    const std::uint64_t extra = g.n / 2;
    for (std::uint64_t i = 0; i < extra; ++i) {
      Hyperedge e{cores[g.gen.below(k)]};
      while (e.size() < d) {
        const VertexId v = k + g.gen.below(g.n - k);
        if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
      }
      g.add(e);
    }
  }
  known["hitting_set"] = k;
  known["hypergraph_matching"] = k;
  if (d == 2) {
    known["matching"] = k;
    known["vertex_cover"] = k;
  }
}

void forests(Builder& g, std::uint32_t nu) {
  require(nu >= 1, "bounded_arboricity needs nu >= 1");
  std::vector<VertexId> order(g.n);
  for (std::uint32_t f = 0; f < nu; ++f) {
    std::iota(order.begin(), order.end(), VertexId{0});
    shuffle(order, g.gen);
    for (std::uint64_t i = 1; i < g.n; ++i) g.add({order[i], order[g.gen.below(i)]});
  }
}

void grid(Builder& g) {
  const auto side = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(g.n)));
  require(side >= 2, "grid needs n >= 4");
  for (std::uint64_t r = 0; r < side; ++r)
    for (std::uint64_t c = 0; c < side; ++c) {
      const VertexId v = r * side + c;
      if (c + 1 < side) g.add({v, v + 1});
      if (r + 1 < side) g.add({v, v + side});
    }
}

void layered(Builder& g, std::uint32_t k, std::map<std::string, double>& known) {
  // L1 x L2 complete, L2 x L3 complete, L3 x L4 a perfect matching, with
  // |L2| = |L3| = |L4| = k/2 and L1 the rest.
  require(k >= 2 && k % 2 == 0, "layered needs even k >= 2");
  const std::uint64_t h = k / 2;
  require(g.n >= 4 * h, "layered needs n >= 2k");
  const std::uint64_t l1 = g.n - 3 * h;
  const VertexId l2 = l1, l3 = l1 + h, l4 = l1 + 2 * h;
  for (VertexId a = 0; a < l1; ++a)
    for (VertexId b = 0; b < h; ++b) g.add({a, l2 + b});
  for (VertexId a = 0; a < h; ++a)
    for (VertexId b = 0; b < h; ++b) g.add({l2 + a, l3 + b});
  for (VertexId a = 0; a < h; ++a) g.add({l3 + a, l4 + a});
  known["matching"] = k;
  known["vertex_cover"] = k;
}

std::uint64_t solve_decoys(std::uint64_t final_edges, double churn) {
  // Smallest D with D = floor(churn * (final_edges + D)). The difference
  // floor(churn*(E+D)) - D drops by 0 or 1 per step, so the first D where it
  // is <= 0 hits 0 exactly.
  std::uint64_t d = 0;
  auto f = [&](std::uint64_t x) {
    return static_cast<std::uint64_t>(std::floor(churn * static_cast<double>(final_edges + x) + 1e-9));
  };
  while (f(d) > d) ++d;
  return d;
}

}  // namespace

Generated generate(const GeneratorSpec& spec) {
  require(spec.n >= 1, "n must be positive");
  require(spec.churn >= 0 && spec.churn < 1, "churn must be in [0, 1)");
  Generated out;
  auto& known = out.known;
  const std::string& f = spec.family;

  std::uint32_t arity = 2;
  if (f == "planted_hitting_set") arity = spec.d;
  std::uint64_t n = spec.n;
  if (f == "bipartite_complete") {
    require(spec.a >= 1 && spec.b >= 1, "bipartite_complete needs a, b >= 1");
    n = std::max(n, spec.a + spec.b);
  }
  const bool relabel = f == "planted_matching" || f == "planted_hitting_set" || f == "layered";
  Builder g(n, arity, spec.seed, relabel);

  if (f == "planted_matching") {
    planted_matching(g, spec.k, known);
  } else if (f == "planted_hitting_set") {
    planted_hitting_set(g, spec.k, spec.d, known);
  } else if (f == "bounded_arboricity") {
    forests(g, spec.nu);
    known["arboricity_bound"] = spec.nu;
  } else if (f == "tree") {
    forests(g, 1);
    known["arboricity_bound"] = 1;
  } else if (f == "grid") {
    grid(g);
    known["arboricity_bound"] = 2;
  } else if (f == "bipartite_complete") {
    for (VertexId a = 0; a < spec.a; ++a)
      for (VertexId b = 0; b < spec.b; ++b) g.add({a, spec.a + b});
    known["matching"] = static_cast<double>(std::min(spec.a, spec.b));
    known["vertex_cover"] = static_cast<double>(std::min(spec.a, spec.b));
  } else if (f == "random_gnm") {
    const std::uint64_t pairs = n * (n - 1) / 2;
    require(spec.m <= pairs, "random_gnm: m exceeds n(n-1)/2");
    while (g.edges.size() < spec.m) {
      const VertexId u = g.gen.below(n), v = g.gen.below(n);
      if (u != v) g.add({u, v});
    }
  } else if (f == "layered") {
    layered(g, spec.k, known);
  } else if (f == "perfect_matching") {
    require(n % 2 == 0, "perfect_matching needs even n");
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    shuffle(order, g.gen);
    for (std::uint64_t i = 0; i < n; i += 2) g.add({order[i], order[i + 1]});
    known["matching"] = static_cast<double>(n / 2);
    known["vertex_cover"] = static_cast<double>(n / 2);
  } else {
    throw InputError("generator: unknown family '" + f + "'");
  }

  const bool weighted = spec.weights >= 2;
  SplitMix64 rng(derive_seed(spec.seed, 0xc4a7));
  auto draw_weight = [&] { return weighted ? static_cast<double>(1 + rng.below(spec.weights)) : 1.0; };

  // Each item is a live edge or a decoy. A live edge with c churn cycles is
  // inserted c + 1 times and deleted c times; a decoy is inserted and deleted
  // c times each.
  struct Item {
    Hyperedge e;
    double w;
    bool live;
    std::uint64_t cycles;
  };
  std::vector<Item> items;
  for (auto& e : g.edges) items.push_back({e, draw_weight(), true, 0});
  const std::size_t live_count = items.size();
  std::map<Hyperedge, std::size_t> decoy_index;

  const std::uint64_t decoys = solve_decoys(live_count, spec.churn);
  for (std::uint64_t i = 0; i < decoys; ++i) {
    bool placed = false;
    if (live_count == 0 || rng() % 2 == 0) {
      for (int attempt = 0; attempt < 16 && !placed; ++attempt) {
        std::set<VertexId> vs;
        while (vs.size() < std::min<std::uint64_t>(arity, n)) vs.insert(rng.below(n));
        Hyperedge e(vs.begin(), vs.end());
        if (e.size() < 2 || g.seen.count(e)) continue;
        auto [it, fresh] = decoy_index.try_emplace(e, items.size());
        if (fresh) items.push_back({e, draw_weight(), false, 0});
        ++items[it->second].cycles;
        placed = true;
      }
    }
    if (!placed) {
      require(live_count > 0, "churn needs at least one edge");
      ++items[rng.below(live_count)].cycles;
    }
  }

  struct Event {
    double time;
    std::size_t item;
    int delta;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    const std::uint64_t count = 2 * it.cycles + (it.live ? 1 : 0);
    std::vector<double> times(count);
    for (auto& t : times) t = rng.unit();
    std::sort(times.begin(), times.end());
    for (std::uint64_t j = 0; j < count; ++j) events.push_back({times[j], i, j % 2 == 0 ? +1 : -1});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time != b.time ? a.time < b.time : a.item < b.item;
  });
  // Deltas are assigned by position so an item always alternates, even on
  // tied times.
  std::map<std::size_t, int> next_delta;
  out.stream.n = n;
  out.stream.max_arity = arity;
  out.stream.weighted = weighted;
  for (const auto& ev : events) {
    auto [pos, fresh] = next_delta.try_emplace(ev.item, +1);
    out.stream.updates.push_back({items[ev.item].e, items[ev.item].w, pos->second});
    pos->second = -pos->second;
  }
  return out;
}

}  // namespace gsample
