#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdisc/geo/oracles.hpp"
#include "qdisc/geo/scene.hpp"
#include "qdisc/qsim/circuit.hpp"

namespace qdisc::grover {

using geo::GridPoint;
using geo::Scene;

enum class SamplerBackend { quantum, classical };

const char* to_string(SamplerBackend backend);

struct GroverPlan {
  double p = 1.0;
  double theta = 0.0;  // arcsin(sqrt(p))
  double phi = 0.0;    // rotation per iteration
  int iterations = 0;
  double predicted_success = 1.0;  // sin^2((2R + 1) theta)
};

// phi = 2 theta and R = round(arccos(sqrt(p)) / phi), exact halves rounded
// down. Throws DomainError unless 0 < p <= 1.
GroverPlan plan_iterations(double p);

// Same rounding with phi = arcsin(sqrt(2 p (1 - p))). Kept so the two
// rotation formulas can be compared; sampling always uses plan_iterations.
GroverPlan plan_iterations_alt_phi(double p);

// Closest integer with exact halves rounded down.
int closest_integer(double v);

enum class EstimateMethod { exact, monte_carlo };

struct FractionEstimate {
  double p = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;  // grid points examined
};

// Exact enumeration (n <= 12) or uniform classical draws. Throws
// EmptyFeasibleRegionError when nothing feasible is found.
FractionEstimate estimate_feasible_fraction(const Scene& scene, EstimateMethod method, std::uint64_t samples = 0,
                                            std::uint64_t seed = 0);

struct GroverCircuit {
  geo::OracleLayout layout;
  qsim::Circuit circuit;
};

// Hadamards on the coordinates followed by R rounds of oracle and diffusion.
GroverCircuit build_grover_circuit(const Scene& scene, const GroverPlan& plan);

// Probability of measuring each grid point (indexed y * 2^n + x) after the
// Grover circuit.
std::vector<double> terminal_distribution(const Scene& scene, const GroverPlan& plan);

// Sum of `distribution` over feasible cells.
double feasible_mass(const Scene& scene, std::span<const double> distribution);

struct QueryStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t accepted_points = 0;
  std::uint64_t retries = 0;
  std::uint64_t shots = 0;
  double mean_calls_per_point = 0.0;
};

struct SampledPoint {
  GridPoint point;
  std::uint64_t retries = 0;
  std::uint64_t oracle_calls_cumulative = 0;
};

struct SampleRun {
  std::vector<SampledPoint> points;
  QueryStats stats;
  std::uint64_t seed = 0;
  SamplerBackend backend = SamplerBackend::quantum;
  GroverPlan plan;  // quantum runs only

  std::vector<GridPoint> grid_points() const;
};

inline constexpr std::uint64_t kDefaultMaxRetries = 20;
inline constexpr std::uint64_t kClassicalDrawCap = 1'000'000'000;

// Seed for work unit `index`, independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Simulates the Grover circuit once and draws shots from its terminal
// distribution. Each attempt costs R + 1 oracle calls: R inside the circuit
// and one to check the measured point.
class QuantumSampler {
 public:
  // Plans with the exact feasible fraction.
  explicit QuantumSampler(const Scene& scene);
  QuantumSampler(const Scene& scene, const GroverPlan& plan);

  const GroverPlan& plan() const { return plan_; }
  const std::vector<double>& distribution() const { return distribution_; }

  // Throws AmplificationFailureError if a point needs more than
  // `max_retries_per_point` retries, UsageError if count is 0.
  SampleRun sample(std::uint64_t count, std::uint64_t seed,
                   std::uint64_t max_retries_per_point = kDefaultMaxRetries) const;

 private:
  Scene scene_;
  GroverPlan plan_;
  std::vector<double> distribution_;
  std::vector<double> cumulative_;
};

SampleRun sample_points(const Scene& scene, std::uint64_t count, std::uint64_t seed,
                        std::uint64_t max_retries_per_point = kDefaultMaxRetries);

// Uniform draws over the grid until `count` feasible points are accepted.
// Throws RunawayError after kClassicalDrawCap draws.
SampleRun classical_rejection_sample(const Scene& scene, std::uint64_t count, std::uint64_t seed);

// Classical M / p, quantum (R + 1) M.
double expected_queries(std::uint64_t m, double p, SamplerBackend backend);

struct ChiSquare {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Pearson test of `counts` against equal expectation. Throws
// InsufficientDataError below 20 samples per cell on average.
ChiSquare uniformity_test(std::span<const std::uint64_t> counts);
// Counts the run's points over the scene's feasible cells.
ChiSquare uniformity_test(const Scene& scene, const SampleRun& run);

struct SweepRow {
  double p = 0.0;
  int iterations = 0;
  double classical_mean_calls = 0.0;
  double quantum_mean_calls = 0.0;
  double classical_analytic = 0.0;  // M / p
  double quantum_analytic = 0.0;    // (R + 1) M
  double ratio = 0.0;               // quantum / classical, empirical
};

// Mean oracle calls per backend over `seeds`, M points each.
std::vector<SweepRow> sweep_complexity(std::span<const Scene> scenes, std::uint64_t m,
                                       std::span<const std::uint64_t> seeds);

}  // namespace qdisc::grover
