#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdisc/geo/scene.hpp"
#include "qdisc/grover/sampler.hpp"

namespace qdisc::cli {

inline constexpr const char* kToolName = "qdisc";
inline constexpr const char* kToolVersion = "0.1.0";

// Writes to a sibling temp file and renames it over `path`. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// index,x,y,retries,oracle_calls_cumulative
std::string points_csv(const grover::SampleRun& run);

struct RunSummary {
  grover::SamplerBackend backend = grover::SamplerBackend::quantum;
  std::optional<double> p_exact;  // empty when the grid is too large to enumerate
  double p_estimate = 0.0;
  int iterations = 0;
  grover::QueryStats stats;
};

// backend,p_exact,p_estimate,R,shots,oracle_calls,mean_calls_per_point
std::string stats_csv(const RunSummary& summary);

inline constexpr int kPixelsPerUnit = 20;

// Obstacles over the [0, 2^n]^2 workspace with the points as dots. The y axis
// points up: grid (x, y) sits at pixel (m + 20 x, m + 20 (2^n - y)) with a
// 20-pixel margin m.
std::string scene_svg(const geo::Scene& scene, std::span<const geo::GridPoint> points);

// p,R,classical_empirical,quantum_empirical,classical_analytic,quantum_analytic
std::string bench_csv(std::span<const grover::SweepRow> rows);

// Oracle calls against p for both backends, empirical and analytic.
std::string bench_svg(std::span<const grover::SweepRow> rows, std::uint64_t m);

struct Manifest {
  std::string command;
  std::string backend;
  std::uint64_t seed = 0;
  std::uint64_t points = 0;
  std::vector<std::uint64_t> seeds;  // bench only
  std::vector<std::string> scene_hashes;
  std::vector<std::string> scenes;  // canonical documents, as strings
  std::vector<std::string> files;
};

// Pretty-printed JSON without timestamps, so reruns reproduce it exactly.
std::string manifest_json(const Manifest& manifest);

}  // namespace qdisc::cli
