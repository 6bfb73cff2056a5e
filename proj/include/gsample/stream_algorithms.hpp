#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsample/binary_io.hpp"
#include "gsample/common.hpp"
#include "gsample/kernel_solvers.hpp"
#include "gsample/sample_sketch.hpp"
#include "gsample/sketches.hpp"

namespace gsample {

enum class Mode : std::uint8_t {
  exact_matching,
  weighted_matching,
  large_matching,
  semi_streaming,
  weighted_large,
  arboricity,
  hitting_set,
  hypergraph_matching,
  contraction,
};

/// "exact-matching", "weighted-matching", "large-matching", "semi-streaming",
/// "weighted-large", "arboricity", "hitting-set", "hypergraph-matching",
/// "contraction". Underscores are accepted in place of dashes.
Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct AlgoParams {
  Mode mode = Mode::exact_matching;
  std::uint32_t k = 4;
  double alpha = 1.0;
  double eps = 0.5;
  std::uint32_t nu = 1;
  std::uint32_t d = 2;
  double r_const = 5.0;
  double b_const = 100.0;
  /// Vertex sampling rate constant for arboricity: p = p_const eps^-2 n^-1/5.
  double p_const = 8.0;
  /// Cap on the hash independence used by large-matching sketches.
  std::uint32_t t_cap = 64;
  /// Independent trials for contraction search.
  std::uint32_t reps = 5;
  /// Overrides the mode's default cell type.
  std::optional<CellMode> cell_mode;
  /// weighted-matching: round weights up to powers of (1 + eps).
  bool round = false;
  /// weighted-large: largest weight in the stream; fixes the level count.
  double w_max = 0;
  PropertySpec prop;
  /// Per-cell failure probability of l0 and sparse-recovery sketches.
  double delta = 0.01;
  std::uint64_t seed = 1;

  /// Throws InputError on values outside the mode's domain.
  void validate() const;
  bool operator==(const AlgoParams&) const = default;
};

struct EstimateReport {
  Mode mode = Mode::exact_matching;
  double value = 0;
  /// Matching, hitting set or property subgraph, depending on the mode.
  std::optional<Solution> certificate;
  /// exact-matching: the vertex cover found on the kernel.
  std::optional<Solution> cover;
  /// contraction: one stream edge per certificate edge when recoverable.
  std::vector<std::optional<Hyperedge>> representatives;
  std::map<std::string, double> components;
  std::size_t cells = 0;
  std::size_t bytes = 0;
  std::vector<std::string> flags;
  bool success = true;
};

/// Sketch dimensions a mode uses for a given n, exposed for reporting.
std::uint32_t exact_reps(double r_const, std::uint32_t k);
std::uint32_t large_reps(double r_const, std::uint32_t k, double alpha, double eps);
std::uint64_t large_colors(std::uint32_t k, double alpha);
/// ceil(log2 n) + 1 levels k = 1, 2, 4, ...
std::uint32_t semi_levels(std::uint64_t n);
/// Weight levels (1 + eps)^i for i = 0 .. ceil(log_{1+eps} w_max).
std::uint32_t weight_levels(double w_max, double eps);
/// The power of (1 + eps) at or above w.
double round_weight(double w, double eps);
std::uint32_t arboricity_k(std::uint64_t n);
double arboricity_p(double p_const, double eps, std::uint64_t n);

/// A streaming algorithm together with all of its sketches. Shards built
/// with equal parameters and n merge exactly.
class Pipeline {
 public:
  static constexpr SketchTag kTag = SketchTag::pipeline;

  Pipeline(AlgoParams params, std::uint64_t n, std::uint32_t max_arity = 2);

  void update(const EdgeUpdate& upd);
  void merge(const Pipeline& other);
  EstimateReport finish() const;

  const AlgoParams& params() const { return params_; }
  std::uint64_t n() const { return n_; }
  const std::vector<SampleSketch>& sketches() const { return sketches_; }
  SpaceReport space_report() const;

  void serialize(ByteWriter& out) const;
  static Pipeline deserialize(ByteReader& in);

  bool operator==(const Pipeline& o) const;

 private:
  Pipeline(AlgoParams params, std::uint64_t n, std::uint32_t max_arity, bool build);
  void build();
  bool member(VertexId v) const;

  EstimateReport finish_exact() const;
  EstimateReport finish_weighted() const;
  EstimateReport finish_large() const;
  EstimateReport finish_semi() const;
  EstimateReport finish_weighted_large() const;
  EstimateReport finish_arboricity() const;
  EstimateReport finish_hitting() const;
  EstimateReport finish_contraction() const;

  AlgoParams params_;
  std::uint64_t n_;
  std::uint32_t max_arity_;
  std::vector<SampleSketch> sketches_;
  // Arboricity state: degrees of sampled vertices and the induced edges.
  std::map<VertexId, std::int64_t> degrees_;
  std::optional<SparseRecovery> induced_;
  std::uint64_t sampled_ = 0;
};

/// Builds a pipeline sized for the stream, feeds every update, finishes.
EstimateReport run_pipeline(const Stream& s, const AlgoParams& params);

/// Greedy matching over one sketch's repetitions, in order, taking
/// monochromatic edges whose color is not used by a matched vertex.
Solution greedy_color_matching(const SampleSketch& sk);

}  // namespace gsample
