#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsample/compare.hpp"
#include "gsample/oracle.hpp"
#include "gsample/stream_algorithms.hpp"

namespace gsample {

/// Environment variable read for the default --seed.
inline constexpr const char* kSeedEnv = "GSAMPLE_SEED";

/// GSAMPLE_SEED when set and numeric, otherwise 1.
std::uint64_t default_seed();

/// Result documents are JSON objects with a "schema" key. `query` and
/// `oracle` share the gsample.result/1 layout.
std::string report_document(const EstimateReport& r, const AlgoParams& params);
std::string oracle_document(const Solution& s, Problem problem, const OracleParams& params, const HeavyShallow* hs,
                            std::uint32_t nu);
std::string compare_document(const CompareResult& r, const CompareSpec& spec);

/// Entry point of the gsample tool. Returns the process exit code; output
/// that is not redirected with --out goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsample
