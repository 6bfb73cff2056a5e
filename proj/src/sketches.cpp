#include "gsample/sketches.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gsample/rng.hpp"

namespace gsample {
namespace {

constexpr u128 kKeyLimit = u128{1} << kMaxKeyBits;

std::uint64_t fold_key(EdgeKey key) {
  const auto lo = static_cast<std::uint64_t>(key.value);
  const auto hi = static_cast<std::uint64_t>(key.value >> 64);
  return mix64(lo ^ mix64(hi + 0x5851f42d4c957f2dULL));
}

std::uint32_t rows_for(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("failure probability delta must lie in (0, 1)");
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(std::log2(1.0 / delta))));
}

void write_shape(ByteWriter& out, const RecoveryShape& s) {
  out.u64(s.seed);
  out.u64(s.capacity);
  out.u32(s.rows);
}

RecoveryShape read_shape(ByteReader& in) {
  RecoveryShape s;
  s.seed = in.u64();
  s.capacity = in.u64();
  s.rows = in.u32();
  if (s.capacity == 0 || s.rows == 0 || s.capacity > (1ULL << 40) || s.rows > 64)
    throw FormatError("sparse recovery: invalid shape");
  return s;
}

}  // namespace

EdgeKey encode_edge(std::span<const VertexId> v, std::uint64_t n) {
  if (v.empty()) throw InputError("cannot encode an empty edge");
  u128 value = 0;
  u128 power = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= n) throw InputError("vertex id " + std::to_string(v[i]) + " out of range");
    if (i > 0 && v[i] <= v[i - 1]) throw InputError("edge vertices must be strictly increasing");
    if (i > 0) {
      if (power > kKeyLimit / n) throw InputError("edge key exceeds 120 bits; reduce n or arity");
      power *= n;
    }
    const u128 term = static_cast<u128>(v[i]) * power;
    if (v[i] != 0 && term / v[i] != power) throw InputError("edge key exceeds 120 bits; reduce n or arity");
    value += term;
    if (value >= kKeyLimit) throw InputError("edge key exceeds 120 bits; reduce n or arity");
  }
  return EdgeKey{value};
}

Hyperedge decode_edge(EdgeKey key, std::uint64_t n) {
  if (n == 0) throw InputError("decode_edge: n must be positive");
  if (key.value == 0) return {0};
  Hyperedge out;
  u128 rest = key.value;
  while (rest > 0) {
    out.push_back(static_cast<VertexId>(rest % n));
    rest /= n;
  }
  return out;
}

namespace field61 {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(p) & kModulus) + static_cast<std::uint64_t>(p >> 61);
  r = (r & kModulus) + (r >> 61);
  return r >= kModulus ? r - kModulus : r;
}

std::uint64_t pow(std::uint64_t base, u128 exponent) {
  std::uint64_t result = 1;
  base %= kModulus;
  while (exponent) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t from_signed(std::int64_t v) {
  const std::int64_t m = static_cast<std::int64_t>(kModulus);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace field61

// ---------------------------------------------------------------- counter

CounterSketch CounterSketch::deserialize(ByteReader& in) {
  CounterSketch c;
  c.count_ = in.i64();
  return c;
}

// ---------------------------------------------------------------- xor unique

std::uint64_t XorUniqueSketch::fingerprint(EdgeKey key) const {
  return mix64(fold_key(key) ^ derive_seed(seed_, 0xc5ec));
}

void XorUniqueSketch::update(EdgeKey key, int delta) {
  count_ += delta;
  xor_acc_ ^= key.value;
  checksum_ ^= fingerprint(key);
}

void XorUniqueSketch::merge(const XorUniqueSketch& other) {
  if (seed_ != other.seed_) throw MergeError("xor-unique sketches have different seeds");
  count_ += other.count_;
  xor_acc_ ^= other.xor_acc_;
  checksum_ ^= other.checksum_;
}

UniqueQuery XorUniqueSketch::query() const {
  if (count_ != 1) return {};
  const EdgeKey key{xor_acc_};
  if (key.value >= kKeyLimit || checksum_ != fingerprint(key)) return {UniqueQuery::Status::corrupt, key};
  return {UniqueQuery::Status::found, key};
}

void XorUniqueSketch::serialize(ByteWriter& out) const {
  out.u64(seed_);
  out.i64(count_);
  out.u128(xor_acc_);
  out.u64(checksum_);
}

XorUniqueSketch XorUniqueSketch::deserialize(ByteReader& in) {
  XorUniqueSketch s(in.u64());
  s.count_ = in.i64();
  s.xor_acc_ = in.u128();
  s.checksum_ = in.u64();
  return s;
}

// ---------------------------------------------------------------- one-sparse

void OneSparseRecoverer::apply(EdgeKey key, std::int64_t delta, std::uint64_t zpow) {
  c0 += delta;
  c1 += static_cast<i128>(delta) * static_cast<i128>(key.value);
  const std::uint64_t term = field61::mul(field61::from_signed(delta), zpow);
  fp += term;
  if (fp >= field61::kModulus) fp -= field61::kModulus;
}

void OneSparseRecoverer::add(const OneSparseRecoverer& other) {
  c0 += other.c0;
  c1 += other.c1;
  fp += other.fp;
  if (fp >= field61::kModulus) fp -= field61::kModulus;
}

std::optional<std::pair<EdgeKey, std::int64_t>> OneSparseRecoverer::decode(std::uint64_t z) const {
  if (c0 == 0) return std::nullopt;
  if (c1 % c0 != 0) return std::nullopt;
  const i128 k = c1 / c0;
  if (k < 0 || static_cast<u128>(k) >= kKeyLimit) return std::nullopt;
  const EdgeKey key{static_cast<u128>(k)};
  if (fp != field61::mul(field61::from_signed(c0), field61::pow(z, key.value))) return std::nullopt;
  return std::make_pair(key, c0);
}

// ---------------------------------------------------------------- recovery table

std::uint64_t RecoveryShape::z() const {
  return 2 + derive_seed(seed, 0x7a) % (field61::kModulus - 3);
}

std::uint64_t RecoveryShape::bucket(EdgeKey key, std::uint32_t row) const {
  return mix64(fold_key(key) ^ derive_seed(seed, 0x100 + row)) % width();
}

void RecoveryTable::add_bucket(std::uint64_t id, const OneSparseRecoverer& delta) {
  auto [it, inserted] = buckets_.try_emplace(id);
  it->second.add(delta);
  if (it->second.is_zero()) buckets_.erase(it);
}

void RecoveryTable::apply(const RecoveryShape& shape, EdgeKey key, std::int64_t delta, std::uint64_t zpow) {
  OneSparseRecoverer d;
  d.apply(key, delta, zpow);
  for (std::uint32_t row = 0; row < shape.rows; ++row) add_bucket(row * shape.width() + shape.bucket(key, row), d);
}

void RecoveryTable::merge(const RecoveryTable& other) {
  for (const auto& [id, b] : other.buckets_) add_bucket(id, b);
}

SparseDecode RecoveryTable::decode(const RecoveryShape& shape) const {
  SparseDecode result;
  RecoveryTable work = *this;
  const std::uint64_t z = shape.z();
  const std::uint64_t width = shape.width();

  std::vector<std::uint64_t> pending;
  pending.reserve(work.buckets_.size());
  for (const auto& [id, b] : work.buckets_) pending.push_back(id);
  std::sort(pending.begin(), pending.end(), std::greater<>());

  while (!pending.empty()) {
    const std::uint64_t id = pending.back();
    pending.pop_back();
    const auto it = work.buckets_.find(id);
    if (it == work.buckets_.end()) continue;
    const auto pure = it->second.decode(z);
    if (!pure) continue;
    const auto [key, mult] = *pure;
    const auto row = static_cast<std::uint32_t>(id / width);
    if (shape.bucket(key, row) != id % width) continue;

    result.entries.emplace_back(key, mult);
    OneSparseRecoverer removal;
    removal.apply(key, -mult, field61::pow(z, key.value));
    for (std::uint32_t r = 0; r < shape.rows; ++r) {
      const std::uint64_t other = r * width + shape.bucket(key, r);
      work.add_bucket(other, removal);
      if (work.buckets_.count(other)) pending.push_back(other);
    }
  }

  result.ok = work.buckets_.empty();
  std::sort(result.entries.begin(), result.entries.end());
  result.overflow = result.entries.size() > shape.capacity;
  return result;
}

std::int64_t RecoveryTable::row_total(const RecoveryShape& shape, std::uint32_t row) const {
  std::int64_t total = 0;
  const std::uint64_t lo = row * shape.width();
  const std::uint64_t hi = lo + shape.width();
  for (const auto& [id, b] : buckets_)
    if (id >= lo && id < hi) total += b.c0;
  return total;
}

void RecoveryTable::serialize(ByteWriter& out) const {
  std::vector<std::uint64_t> ids;
  ids.reserve(buckets_.size());
  for (const auto& [id, b] : buckets_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  out.u64(ids.size());
  for (auto id : ids) {
    const auto& b = buckets_.at(id);
    out.u64(id);
    out.i64(b.c0);
    out.i128(b.c1);
    out.u64(b.fp);
  }
}

RecoveryTable RecoveryTable::deserialize(ByteReader& in) {
  RecoveryTable t;
  const auto n = in.count(40);
  t.buckets_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto id = in.u64();
    OneSparseRecoverer b;
    b.c0 = in.i64();
    b.c1 = in.i128();
    b.fp = in.u64();
    if (b.is_zero() || b.fp >= field61::kModulus) throw FormatError("sparse recovery: invalid bucket");
    if (!t.buckets_.emplace(id, b).second) throw FormatError("sparse recovery: duplicate bucket");
  }
  return t;
}

// ---------------------------------------------------------------- sparse recovery

SparseRecovery::SparseRecovery(std::uint64_t capacity_s, double delta, std::uint64_t seed) {
  if (capacity_s == 0) throw InputError("sparse recovery capacity must be positive");
  shape_ = RecoveryShape{seed, capacity_s, rows_for(delta)};
}

void SparseRecovery::update(EdgeKey key, int delta) {
  table_.apply(shape_, key, delta, field61::pow(shape_.z(), key.value));
}

void SparseRecovery::merge(const SparseRecovery& other) {
  if (!(shape_ == other.shape_)) throw MergeError("sparse recovery sketches have different shapes or seeds");
  table_.merge(other.table_);
}

void SparseRecovery::serialize(ByteWriter& out) const {
  write_shape(out, shape_);
  table_.serialize(out);
}

SparseRecovery SparseRecovery::deserialize(ByteReader& in) {
  SparseRecovery s(read_shape(in));
  s.table_ = RecoveryTable::deserialize(in);
  return s;
}

// ---------------------------------------------------------------- l0 sampler

L0Sampler::L0Sampler(std::uint64_t seed, double delta) : delta_(delta) {
  const std::uint32_t rows = rows_for(delta);
  const auto s0 = static_cast<std::uint64_t>(std::ceil(4.0 * std::log2(1.0 / delta)));
  shape_ = RecoveryShape{seed, std::max<std::uint64_t>(1, s0), rows};
}

std::uint64_t L0Sampler::level_hash(EdgeKey key) const {
  return mix64(fold_key(key) ^ derive_seed(shape_.seed, 0x1e7e1));
}

std::uint32_t L0Sampler::level_of(EdgeKey key) const {
  return std::min<std::uint32_t>(kMaxLevel, static_cast<std::uint32_t>(std::countl_zero(level_hash(key))));
}

void L0Sampler::update(EdgeKey key, int delta) {
  const std::uint32_t top = level_of(key);
  const std::uint64_t zpow = field61::pow(shape_.z(), key.value);
  for (std::uint32_t level = 0; level <= top; ++level) {
    auto& table = levels_[level];
    table.apply(shape_, key, delta, zpow);
    if (table.empty()) levels_.erase(level);
  }
}

void L0Sampler::merge(const L0Sampler& other) {
  if (!(shape_ == other.shape_) || delta_ != other.delta_)
    throw MergeError("l0 samplers have different seeds or parameters");
  for (const auto& [level, table] : other.levels_) {
    auto& mine = levels_[level];
    mine.merge(table);
    if (mine.empty()) levels_.erase(level);
  }
}

L0Query L0Sampler::query() const {
  if (levels_.empty()) return {L0Query::Status::empty, {}};
  const auto decoded = levels_.rbegin()->second.decode(shape_);
  if (!decoded.ok || decoded.entries.empty()) return {L0Query::Status::fail, {}};
  const std::pair<EdgeKey, std::int64_t>* best = nullptr;
  std::uint64_t best_hash = 0;
  for (const auto& entry : decoded.entries) {
    if (entry.second <= 0) return {L0Query::Status::fail, {}};
    const auto h = level_hash(entry.first);
    if (!best || h < best_hash) {
      best = &entry;
      best_hash = h;
    }
  }
  return {L0Query::Status::found, best->first};
}

std::size_t L0Sampler::nonzero_buckets() const {
  std::size_t total = 0;
  for (const auto& [level, table] : levels_) total += table.nonzero_buckets();
  return total;
}

std::int64_t L0Sampler::net_count() const {
  const auto it = levels_.find(0);
  return it == levels_.end() ? 0 : it->second.row_total(shape_, 0);
}

void L0Sampler::serialize(ByteWriter& out) const {
  out.u64(shape_.seed);
  out.f64(delta_);
  out.u32(static_cast<std::uint32_t>(levels_.size()));
  for (const auto& [level, table] : levels_) {
    out.u32(level);
    table.serialize(out);
  }
}

L0Sampler L0Sampler::deserialize(ByteReader& in) {
  const auto seed = in.u64();
  const double delta = in.f64();
  if (!(delta > 0.0 && delta < 1.0)) throw FormatError("l0 sampler: invalid delta");
  L0Sampler s(seed, delta);
  const auto count = in.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto level = in.u32();
    if (level > kMaxLevel || s.levels_.count(level)) throw FormatError("l0 sampler: invalid level");
    auto table = RecoveryTable::deserialize(in);
    if (table.empty()) throw FormatError("l0 sampler: empty level stored");
    s.levels_.emplace(level, std::move(table));
  }
  return s;
}

}  // namespace gsample
