#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdisc/grover/sampler.hpp"

namespace qdisc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verification or sampling failure
  kExitUsage = 2,    // bad flags or an invalid scene
  kExitIo = 3,
  kExitCapacity = 4,
};

// Exit status for an exception escaping a command.
int exit_code_for(const std::exception& e);

struct SampleOptions {
  std::filesystem::path scene;
  std::uint64_t points = 0;
  std::uint64_t seed = 0;
  grover::SamplerBackend backend = grover::SamplerBackend::quantum;
  std::filesystem::path out;
  // How the quantum backend learns p before planning R.
  grover::EstimateMethod method = grover::EstimateMethod::exact;
  std::uint64_t samples = 0;
};

// Writes points.csv, stats.csv, scene.svg and manifest.json into `out`.
// Throws on any failure; returns the sampled run.
grover::SampleRun cmd_sample(const SampleOptions& options, std::ostream& log);

struct BenchOptions {
  std::vector<std::filesystem::path> scenes;
  std::uint64_t points = 200;
  std::uint64_t seed = 0;
  std::uint64_t seeds = 30;
  std::filesystem::path out;
};

// Reads a list of scene paths, one per line; '#' starts a comment and
// relative paths resolve against the list's directory.
std::vector<std::filesystem::path> read_scene_list(const std::filesystem::path& list);

// Writes bench.csv, bench.svg and manifest.json into `out`. Needs scenes with
// at least two distinct feasible fractions.
std::vector<grover::SweepRow> cmd_bench(const BenchOptions& options, std::ostream& log);

// Parses argv and runs one subcommand; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdisc::cli
