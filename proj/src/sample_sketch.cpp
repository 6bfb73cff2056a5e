#include "gsample/sample_sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "gsample/rng.hpp"

namespace gsample {
namespace {

constexpr std::uint64_t kHashTag = 0x4a54;
constexpr std::uint64_t kCellTag = 0xce11;

bool cell_is_zero(const Cell& c) {
  return std::visit([](const auto& s) { return s.is_zero(); }, c);
}

std::int64_t cell_count(const Cell& c) {
  return std::visit([](const auto& s) { return s.net_count(); }, c);
}

// Decoded key must be a canonical edge of [0, n) whose colors match the cell.
std::optional<Hyperedge> validated(EdgeKey key, const SampleSketch& sk, const CellId& id) {
  const auto& cfg = sk.config();
  Hyperedge e = decode_edge(key, cfg.n);
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] <= e[i - 1]) return std::nullopt;
  if (e.back() >= cfg.n) return std::nullopt;
  if (sk.hashes()[id.rep].color_set(e) != id.colors) return std::nullopt;
  return e;
}

}  // namespace

std::size_t CellIdHash::operator()(const CellId& id) const noexcept {
  std::uint64_t h = mix64(id.rep ^ (std::bit_cast<std::uint64_t>(id.weight) * 0x9e3779b97f4a7c15ULL));
  for (auto c : id.colors) h = mix64(h ^ c);
  return static_cast<std::size_t>(h);
}

std::vector<const CellMap::value_type*> SampleSketch::sorted_cells() const {
  std::vector<const CellMap::value_type*> out;
  out.reserve(cells_.size());
  for (const auto& kv : cells_) out.push_back(&kv);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->first < b->first; });
  return out;
}

std::string to_string(CellMode m) {
  switch (m) {
    case CellMode::counter: return "counter";
    case CellMode::xor_unique: return "xor_unique";
    case CellMode::l0: return "l0";
  }
  return "?";
}

CellMode parse_cell_mode(const std::string& s) {
  if (s == "counter") return CellMode::counter;
  if (s == "xor_unique" || s == "xor") return CellMode::xor_unique;
  if (s == "l0") return CellMode::l0;
  throw InputError("unknown cell mode '" + s + "' (expected counter, xor_unique or l0)");
}

void SampleConfig::validate() const {
  if (b == 0) throw InputError("b must be at least 1");
  if (b > (1ULL << 32)) throw InputError("b exceeds 2^32 colors");
  if (d == 0) throw InputError("d must be at least 1");
  if (r == 0) throw InputError("r must be at least 1");
  if (independence_t < 2) throw InputError("hash independence must be at least 2");
  if (n == 0) throw InputError("n must be at least 1");
  if (cell_mode == CellMode::l0 && !(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
}

SampleSketch::SampleSketch(SampleConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  hashes_.reserve(cfg_.r);
  const auto root = derive_seed(cfg_.seed, kHashTag);
  for (std::uint32_t j = 0; j < cfg_.r; ++j) hashes_.push_back(new_hash(derive_seed(root, j), cfg_.independence_t, cfg_.n, cfg_.b));
}

Cell SampleSketch::make_cell(const CellId& id) const {
  std::uint64_t s = derive_seed(derive_seed(cfg_.seed, kCellTag), id.rep);
  s = derive_seed(s, std::bit_cast<std::uint64_t>(id.weight));
  for (auto c : id.colors) s = derive_seed(s, c);
  switch (cfg_.cell_mode) {
    case CellMode::counter: return CounterSketch{};
    case CellMode::xor_unique: return XorUniqueSketch(s);
    case CellMode::l0: return L0Sampler(s, cfg_.delta);
  }
  throw InputError("invalid cell mode");
}

void SampleSketch::update(const EdgeUpdate& upd) {
  update(canonical_edge(upd.vertices, cfg_.n), upd.weight, upd.delta);
}

void SampleSketch::update(const Hyperedge& e, double weight, int delta) {
  if (delta != 1 && delta != -1) throw InputError("update delta must be +1 or -1");
  if (!std::isfinite(weight) || weight <= 0) throw InputError("edge weight must be positive and finite");
  const EdgeKey key = encode_edge(e, cfg_.n);
  CellId id{0, weight, {}};
  for (std::uint32_t j = 0; j < cfg_.r; ++j) {
    id.rep = j;
    hashes_[j].color_set(e, id.colors);
    if (id.colors.size() > cfg_.d) continue;
    auto it = cells_.find(id);
    if (it == cells_.end()) it = cells_.emplace(id, make_cell(id)).first;
    std::visit([&](auto& s) { s.update(key, delta); }, it->second);
    if (cell_is_zero(it->second)) cells_.erase(it);
  }
}

void SampleSketch::merge(const SampleSketch& other) {
  if (!(cfg_ == other.cfg_)) throw MergeError("sample sketches have different configurations or seeds");
  for (const auto& [id, cell] : other.cells_) {
    auto it = cells_.find(id);
    if (it == cells_.end()) {
      cells_.emplace(id, cell);
      continue;
    }
    std::visit(
        [&](auto& mine) {
          using T = std::decay_t<decltype(mine)>;
          mine.merge(std::get<T>(cell));
        },
        it->second);
    if (cell_is_zero(it->second)) cells_.erase(it);
  }
}

SampledSubgraph SampleSketch::extract_subgraph() const {
  if (cfg_.cell_mode == CellMode::counter)
    throw InputError("counter cells cannot recover edges; use xor_unique or l0 cells");
  SampledSubgraph out;
  out.n = cfg_.n;
  for (const auto* kv : sorted_cells()) {
    const auto& [id, cell] = *kv;
    std::optional<EdgeKey> key;
    if (const auto* x = std::get_if<XorUniqueSketch>(&cell)) {
      const auto q = x->query();
      if (q.status == UniqueQuery::Status::corrupt) ++out.corrupt_cells;
      if (q.status == UniqueQuery::Status::found) key = q.key;
    } else if (const auto* l = std::get_if<L0Sampler>(&cell)) {
      const auto q = l->query();
      if (q.status == L0Query::Status::fail) ++out.failed_cells;
      if (q.status == L0Query::Status::found) key = q.key;
    }
    if (!key) continue;
    auto e = validated(*key, *this, id);
    if (!e) {
      ++out.corrupt_cells;
      continue;
    }
    out.edges.push_back({std::move(*e), id.weight, id.rep, id.colors});
  }
  return out;
}

std::vector<ContractedGraph> SampleSketch::extract_contracted() const {
  if (cfg_.d != 2) throw InputError("contracted graphs need d = 2");
  std::vector<ContractedGraph> out(cfg_.r);
  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, ContractedEdge>> acc(cfg_.r);
  for (std::uint32_t j = 0; j < cfg_.r; ++j) {
    out[j].rep = j;
    out[j].b = cfg_.b;
  }
  for (const auto* kv : sorted_cells()) {
    const auto& [id, cell] = *kv;
    const std::uint32_t a = id.colors.front(), b = id.colors.back();
    auto& ce = acc[id.rep][{a, b}];
    ce.a = a;
    ce.b = b;
    ce.count += cell_count(cell);
    if (ce.representative) continue;
    std::optional<EdgeKey> key;
    if (const auto* x = std::get_if<XorUniqueSketch>(&cell)) {
      const auto q = x->query();
      if (q.status == UniqueQuery::Status::found) key = q.key;
    } else if (const auto* l = std::get_if<L0Sampler>(&cell)) {
      const auto q = l->query();
      if (q.status == L0Query::Status::found) key = q.key;
    }
    if (key) ce.representative = validated(*key, *this, id);
  }
  for (std::uint32_t j = 0; j < cfg_.r; ++j)
    for (auto& [pair, ce] : acc[j])
      if (ce.count != 0) out[j].edges.push_back(std::move(ce));
  return out;
}

std::vector<double> SampleSketch::weight_classes() const {
  std::set<double> w;
  for (const auto& [id, cell] : cells_) w.insert(id.weight);
  return {w.begin(), w.end()};
}

SpaceReport SampleSketch::space_report() const {
  SpaceReport rep;
  rep.cells = cells_.size();
  rep.cells_per_rep.assign(cfg_.r, 0);
  for (const auto& [id, cell] : cells_) ++rep.cells_per_rep[id.rep];
  rep.weight_classes = weight_classes().size();
  // Byte count does not depend on cell order.
  ByteWriter out;
  write(out, false);
  rep.bytes = out.bytes().size();
  return rep;
}

void write_config(ByteWriter& out, const SampleConfig& cfg) {
  out.u64(cfg.b);
  out.u32(cfg.d);
  out.u32(cfg.r);
  out.u32(cfg.independence_t);
  out.u8(static_cast<std::uint8_t>(cfg.cell_mode));
  out.u64(cfg.seed);
  out.u64(cfg.n);
  out.f64(cfg.delta);
}

SampleConfig read_config(ByteReader& in) {
  SampleConfig cfg;
  cfg.b = in.u64();
  cfg.d = in.u32();
  cfg.r = in.u32();
  cfg.independence_t = in.u32();
  const auto mode = in.u8();
  if (mode > 2) throw FormatError("sample sketch: unknown cell mode");
  cfg.cell_mode = static_cast<CellMode>(mode);
  cfg.seed = in.u64();
  cfg.n = in.u64();
  cfg.delta = in.f64();
  if (cfg.r > (1u << 20) || cfg.independence_t > 4096) throw FormatError("sample sketch: implausible configuration");
  try {
    cfg.validate();
  } catch (const InputError& e) {
    throw FormatError(std::string("sample sketch: ") + e.what());
  }
  return cfg;
}

void SampleSketch::serialize(ByteWriter& out) const { write(out, true); }

void SampleSketch::write(ByteWriter& out, bool sorted) const {
  write_config(out, cfg_);
  const auto weights = weight_classes();
  out.u64(weights.size());
  for (double w : weights) out.f64(w);
  out.u64(cells_.size());
  auto put = [&](const CellId& id, const Cell& cell) {
    out.u32(id.rep);
    out.u32(static_cast<std::uint32_t>(std::lower_bound(weights.begin(), weights.end(), id.weight) - weights.begin()));
    out.u32(static_cast<std::uint32_t>(id.colors.size()));
    for (auto c : id.colors) out.u32(c);
    std::visit([&](const auto& s) { s.serialize(out); }, cell);
  };
  if (sorted) {
    for (const auto* kv : sorted_cells()) put(kv->first, kv->second);
  } else {
    for (const auto& [id, cell] : cells_) put(id, cell);
  }
}

SampleSketch SampleSketch::deserialize(ByteReader& in) {
  SampleSketch sk(read_config(in));
  const auto nw = in.count(8);
  std::vector<double> weights(nw);
  for (auto& w : weights) {
    w = in.f64();
    if (!std::isfinite(w) || w <= 0) throw FormatError("sample sketch: invalid weight class");
  }
  if (!std::is_sorted(weights.begin(), weights.end()) ||
      std::adjacent_find(weights.begin(), weights.end()) != weights.end())
    throw FormatError("sample sketch: weight table not sorted");
  const auto nc = in.count(12);
  std::vector<bool> used(nw, false);
  for (std::uint64_t i = 0; i < nc; ++i) {
    CellId id;
    id.rep = in.u32();
    const auto cls = in.u32();
    const auto ncol = in.u32();
    if (id.rep >= sk.cfg_.r || cls >= nw || ncol == 0 || ncol > sk.cfg_.d) throw FormatError("sample sketch: invalid cell id");
    id.weight = weights[cls];
    used[cls] = true;
    for (std::uint32_t c = 0; c < ncol; ++c) {
      id.colors.push_back(in.u32());
      if (id.colors.back() >= sk.cfg_.b || (c > 0 && id.colors[c] <= id.colors[c - 1]))
        throw FormatError("sample sketch: invalid color set");
    }
    const Cell fresh = sk.make_cell(id);
    Cell cell;
    switch (sk.cfg_.cell_mode) {
      case CellMode::counter: cell = CounterSketch::deserialize(in); break;
      case CellMode::xor_unique: cell = XorUniqueSketch::deserialize(in); break;
      case CellMode::l0: cell = L0Sampler::deserialize(in); break;
    }
    if (cell.index() != fresh.index()) throw FormatError("sample sketch: cell type mismatch");
    if (const auto* x = std::get_if<XorUniqueSketch>(&cell); x && x->seed() != std::get<XorUniqueSketch>(fresh).seed())
      throw FormatError("sample sketch: cell seed mismatch");
    if (const auto* l = std::get_if<L0Sampler>(&cell);
        l && (l->seed() != std::get<L0Sampler>(fresh).seed() || l->delta() != sk.cfg_.delta))
      throw FormatError("sample sketch: cell seed mismatch");
    if (cell_is_zero(cell)) throw FormatError("sample sketch: zero cell stored");
    if (!sk.cells_.emplace(std::move(id), std::move(cell)).second) throw FormatError("sample sketch: duplicate cell");
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) throw FormatError("sample sketch: unused weight class");
  return sk;
}

}  // namespace gsample
