#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsample/stream_algorithms.hpp"
#include "gsample/stream_io.hpp"

namespace gsample {

struct CompareSpec {
  AlgoParams params;
  GeneratorSpec gen;
  std::uint32_t trials = 100;
  /// Trial i uses seed + i for both the generator and the sketches.
  std::uint64_t seed = 1;
  /// Extra slack on the semi-streaming and weighted-large lower bounds.
  double slack = 0.25;
};

struct TrialResult {
  std::uint64_t seed = 0;
  double value = 0;
  double optimum = 0;
  std::map<std::string, bool> checks;
  std::vector<std::string> flags;
  std::size_t cells = 0;
  std::map<std::string, double> components;
  /// Non-empty when the trial threw; all checks count as failed.
  std::string error;
};

struct CompareResult {
  Mode mode = Mode::exact_matching;
  std::vector<TrialResult> trials;
  /// Fraction of trials passing each check.
  std::map<std::string, double> rates;
  double seconds = 0;
};

/// The generator family and sizes `compare` uses for a mode by default.
GeneratorSpec default_generator(const AlgoParams& params);

/// Optimum from the oracle plus the per-mode success checks for one report.
TrialResult check_report(const Stream& s, const AlgoParams& params, const EstimateReport& report, double slack);

CompareResult run_compare(const CompareSpec& spec);

/// Fixed-width text table: one row per check with its success rate.
std::string format_compare_table(const CompareResult& r);

}  // namespace gsample
