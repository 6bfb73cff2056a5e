#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gsample/binary_io.hpp"
#include "gsample/common.hpp"
#include "gsample/hashing.hpp"
#include "gsample/sketches.hpp"

namespace gsample {

enum class CellMode : std::uint8_t { counter = 0, xor_unique = 1, l0 = 2 };

std::string to_string(CellMode m);
/// Accepts "counter", "xor_unique"/"xor", "l0". Throws InputError otherwise.
CellMode parse_cell_mode(const std::string& s);

struct SampleConfig {
  std::uint64_t b = 1;
  std::uint32_t d = 2;
  std::uint32_t r = 1;
  std::uint32_t independence_t = 2;
  CellMode cell_mode = CellMode::xor_unique;
  std::uint64_t seed = 0;
  std::uint64_t n = 1;
  double delta = 0.01;

  /// Throws InputError on an invalid combination.
  void validate() const;
  bool operator==(const SampleConfig&) const = default;
};

/// (repetition, weight, color set). Weight classes are exact weights.
struct CellId {
  std::uint32_t rep = 0;
  double weight = 1.0;
  ColorSet colors;

  auto operator<=>(const CellId&) const = default;
  bool operator==(const CellId&) const = default;
};

struct CellIdHash {
  std::size_t operator()(const CellId& id) const noexcept;
};

using Cell = std::variant<CounterSketch, XorUniqueSketch, L0Sampler>;
using CellMap = std::unordered_map<CellId, Cell, CellIdHash>;

struct SampledEdge {
  Hyperedge vertices;
  double weight = 1.0;
  std::uint32_t rep = 0;
  ColorSet colors;
};

struct SampledSubgraph {
  std::uint64_t n = 0;
  std::vector<SampledEdge> edges;
  /// Cells whose content failed validation, and l0 cells that returned Fail.
  std::size_t corrupt_cells = 0;
  std::size_t failed_cells = 0;
};

/// Edge {a, b} of the graph on color classes; a == b is a loop candidate.
struct ContractedEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::int64_t count = 0;
  /// A stream edge mapped onto this pair, when the cell mode can recover one.
  std::optional<Hyperedge> representative;
};

struct ContractedGraph {
  std::uint32_t rep = 0;
  std::uint64_t b = 0;
  std::vector<ContractedEdge> edges;
};

struct SpaceReport {
  std::size_t cells = 0;
  std::size_t bytes = 0;
  std::size_t weight_classes = 0;
  std::vector<std::size_t> cells_per_rep;
};

/// Streaming state for sample_{b,d,r}: r colorings, one cell per
/// (repetition, weight, color set) touched, created lazily and dropped
/// again when it returns to the zero state.
class SampleSketch {
 public:
  static constexpr SketchTag kTag = SketchTag::sample_sketch;

  explicit SampleSketch(SampleConfig cfg);

  void update(const EdgeUpdate& upd);
  /// Same as update() for an already canonical vertex list.
  void update(const Hyperedge& sorted_vertices, double weight, int delta);
  void merge(const SampleSketch& other);

  /// Requires xor_unique or l0 cells.
  SampledSubgraph extract_subgraph() const;
  /// Requires d == 2. One graph per repetition; counts summed over weights.
  std::vector<ContractedGraph> extract_contracted() const;

  SpaceReport space_report() const;

  const SampleConfig& config() const { return cfg_; }
  const std::vector<HashFn>& hashes() const { return hashes_; }
  /// Unordered; see sorted_cells for a deterministic order.
  const CellMap& cells() const { return cells_; }
  std::vector<const CellMap::value_type*> sorted_cells() const;
  /// Sorted distinct weights with at least one live cell.
  std::vector<double> weight_classes() const;

  void serialize(ByteWriter& out) const;
  static SampleSketch deserialize(ByteReader& in);

  bool operator==(const SampleSketch& o) const { return cfg_ == o.cfg_ && cells_ == o.cells_; }

 private:
  Cell make_cell(const CellId& id) const;
  void write(ByteWriter& out, bool sorted) const;

  SampleConfig cfg_;
  std::vector<HashFn> hashes_;
  CellMap cells_;
};

void write_config(ByteWriter& out, const SampleConfig& cfg);
SampleConfig read_config(ByteReader& in);

}  // namespace gsample
