#include "qdisc/grover/sampler.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>
#include <string>

#include "qdisc/errors.hpp"
#include "qdisc/qsim/state_vector.hpp"

namespace qdisc::grover {

namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("feasible fraction must lie in (0, 1], got " + std::to_string(p));
}

GroverPlan finish_plan(double p, double phi) {
  GroverPlan plan;
  plan.p = p;
  plan.theta = std::asin(std::sqrt(p));
  plan.phi = phi;
  const double target = std::acos(std::sqrt(p));
  plan.iterations = target == 0.0 ? 0 : closest_integer(target / phi);
  const double s = std::sin((2.0 * plan.iterations + 1.0) * plan.theta);
  plan.predicted_success = std::clamp(s * s, 0.0, 1.0);
  return plan;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

GridPoint uniform_point(std::mt19937_64& rng, int n) {
  const auto x = static_cast<std::int64_t>(rng() >> (64 - n));
  const auto y = static_cast<std::int64_t>(rng() >> (64 - n));
  return {x, y};
}

void finish_stats(QueryStats& s) {
  s.mean_calls_per_point =
      s.accepted_points == 0 ? 0.0 : static_cast<double>(s.oracle_calls) / static_cast<double>(s.accepted_points);
}

double exact_fraction(const Scene& scene) {
  const auto feasible = geo::feasible_points(scene).size();
  if (feasible == 0) throw EmptyFeasibleRegionError("scene has no feasible grid point");
  return static_cast<double>(feasible) / static_cast<double>(scene.side() * scene.side());
}

}  // namespace

const char* to_string(SamplerBackend backend) {
  return backend == SamplerBackend::quantum ? "quantum" : "classical";
}

int closest_integer(double v) {
  const double below = std::floor(v);
  // Treat values within rounding noise of a half as exact halves.
  if (std::abs(v - below - 0.5) < 1e-9) return static_cast<int>(below);
  return static_cast<int>(std::lround(v));
}

GroverPlan plan_iterations(double p) {
  require_probability(p);
  return finish_plan(p, 2.0 * std::asin(std::sqrt(p)));
}

GroverPlan plan_iterations_alt_phi(double p) {
  require_probability(p);
  return finish_plan(p, std::asin(std::sqrt(2.0 * p * (1.0 - p))));
}

FractionEstimate estimate_feasible_fraction(const Scene& scene, EstimateMethod method, std::uint64_t samples,
                                            std::uint64_t seed) {
  FractionEstimate e;
  if (method == EstimateMethod::exact) {
    e.p = exact_fraction(scene);
    e.samples = static_cast<std::uint64_t>(scene.side() * scene.side());
    return e;
  }
  if (samples == 0) throw UsageError("monte carlo estimate needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) hits += geo::is_feasible(scene, uniform_point(rng, scene.n)) ? 1 : 0;
  if (hits == 0) throw EmptyFeasibleRegionError("no feasible point among " + std::to_string(samples) + " draws");
  e.samples = samples;
  e.p = static_cast<double>(hits) / static_cast<double>(samples);
  e.standard_error = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(samples));
  return e;
}

GroverCircuit build_grover_circuit(const Scene& scene, const GroverPlan& plan) {
  GroverCircuit g{geo::plan_oracle_layout(scene), qsim::Circuit(1)};
  const auto& L = g.layout;
  g.circuit = qsim::Circuit(L.num_qubits);
  for (int q : L.x.qubits()) g.circuit.add(qsim::Gate::h(q));
  for (int q : L.y.qubits()) g.circuit.add(qsim::Gate::h(q));
  if (plan.iterations > 0) {
    qsim::Circuit round = geo::feasibility_phase_oracle(scene, L);
    round.append(geo::diffusion(L));
    for (int r = 0; r < plan.iterations; ++r) g.circuit.append(round);
  }
  g.circuit.require_clean(L.pool);
  g.circuit.require_clean(L.counter);
  return g;
}

std::vector<double> terminal_distribution(const Scene& scene, const GroverPlan& plan) {
  const auto g = build_grover_circuit(scene, plan);
  const auto state = qsim::apply_circuit(qsim::StateVector(g.layout.num_qubits), g.circuit);
  return state.probabilities(qsim::concat({g.layout.x.qubits(), g.layout.y.qubits()}));
}

double feasible_mass(const Scene& scene, std::span<const double> distribution) {
  const auto side = scene.side();
  double mass = 0.0;
  for (std::int64_t y = 0; y < side; ++y)
    for (std::int64_t x = 0; x < side; ++x)
      if (geo::is_feasible(scene, {x, y})) mass += distribution[static_cast<std::size_t>(y * side + x)];
  return mass;
}

std::vector<GridPoint> SampleRun::grid_points() const {
  std::vector<GridPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.point);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over a golden-ratio stride.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

QuantumSampler::QuantumSampler(const Scene& scene) : QuantumSampler(scene, plan_iterations(exact_fraction(scene))) {}

QuantumSampler::QuantumSampler(const Scene& scene, const GroverPlan& plan)
    : scene_(scene), plan_(plan), distribution_(terminal_distribution(scene, plan)) {
  cumulative_.resize(distribution_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < distribution_.size(); ++i) cumulative_[i] = acc += distribution_[i];
}

SampleRun QuantumSampler::sample(std::uint64_t count, std::uint64_t seed, std::uint64_t max_retries_per_point) const {
  if (count == 0) throw UsageError("sample count must be at least 1");
  SampleRun run;
  run.seed = seed;
  run.backend = SamplerBackend::quantum;
  run.plan = plan_;
  run.points.reserve(count);
  const auto cost = static_cast<std::uint64_t>(plan_.iterations) + 1;
  const auto side = static_cast<std::uint64_t>(scene_.side());
  const double total = cumulative_.back();
  auto& s = run.stats;

  for (std::uint64_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uint64_t retries = 0;
    for (;;) {
      ++s.shots;
      s.oracle_calls += cost;
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), unit(rng) * total);
      const auto cell = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                                            static_cast<std::ptrdiff_t>(side * side) - 1));
      const GridPoint z{static_cast<std::int64_t>(cell % side), static_cast<std::int64_t>(cell / side)};
      if (geo::is_feasible(scene_, z)) {
        ++s.accepted_points;
        run.points.push_back({z, retries, s.oracle_calls});
        break;
      }
      ++s.retries;
      if (++retries > max_retries_per_point) {
        const double rate = static_cast<double>(s.accepted_points) / static_cast<double>(s.shots);
        throw AmplificationFailureError("point " + std::to_string(i) + " still infeasible after " +
                                            std::to_string(max_retries_per_point) +
                                            " retries; measured success rate " + std::to_string(rate),
                                        rate);
      }
    }
  }
  finish_stats(s);
  return run;
}

SampleRun sample_points(const Scene& scene, std::uint64_t count, std::uint64_t seed,
                        std::uint64_t max_retries_per_point) {
  if (count == 0) throw UsageError("sample count must be at least 1");
  return QuantumSampler(scene).sample(count, seed, max_retries_per_point);
}

SampleRun classical_rejection_sample(const Scene& scene, std::uint64_t count, std::uint64_t seed) {
  if (count == 0) throw UsageError("sample count must be at least 1");
  SampleRun run;
  run.seed = seed;
  run.backend = SamplerBackend::classical;
  run.points.reserve(count);
  auto& s = run.stats;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uint64_t retries = 0;
    for (;;) {
      if (s.oracle_calls >= kClassicalDrawCap)
        throw RunawayError("classical sampler exceeded " + std::to_string(kClassicalDrawCap) + " draws");
      ++s.shots;
      ++s.oracle_calls;
      const auto z = uniform_point(rng, scene.n);
      if (geo::is_feasible(scene, z)) {
        ++s.accepted_points;
        run.points.push_back({z, retries, s.oracle_calls});
        break;
      }
      ++s.retries;
      ++retries;
    }
  }
  finish_stats(s);
  return run;
}

double expected_queries(std::uint64_t m, double p, SamplerBackend backend) {
  require_probability(p);
  const auto mm = static_cast<double>(m);
  if (backend == SamplerBackend::classical) return mm / p;
  return (plan_iterations(p).iterations + 1) * mm;
}

ChiSquare uniformity_test(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw InsufficientDataError("no cells to test");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const auto k = static_cast<double>(counts.size());
  if (static_cast<double>(total) < 20.0 * k)
    throw InsufficientDataError(std::to_string(total) + " samples over " + std::to_string(counts.size()) +
                                " cells; need at least 20 per cell on average");
  const double expected = static_cast<double>(total) / k;
  ChiSquare r;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    r.statistic += d * d / expected;
  }
  r.degrees_of_freedom = static_cast<int>(counts.size()) - 1;
  r.p_value = r.degrees_of_freedom == 0 ? 1.0 : boost::math::gamma_q(r.degrees_of_freedom / 2.0, r.statistic / 2.0);
  return r;
}

ChiSquare uniformity_test(const Scene& scene, const SampleRun& run) {
  const auto cells = geo::feasible_points(scene);
  std::vector<std::uint64_t> counts(cells.size(), 0);
  for (const auto& p : run.points) {
    const auto it = std::lower_bound(cells.begin(), cells.end(), p.point, [](const GridPoint& a, const GridPoint& b) {
      return std::pair(a.y, a.x) < std::pair(b.y, b.x);
    });
    if (it == cells.end() || *it != p.point)
      throw DomainError("sampled point (" + std::to_string(p.point.x) + "," + std::to_string(p.point.y) +
                        ") is not a feasible cell");
    ++counts[static_cast<std::size_t>(it - cells.begin())];
  }
  return uniformity_test(counts);
}

std::vector<SweepRow> sweep_complexity(std::span<const Scene> scenes, std::uint64_t m,
                                       std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw UsageError("sweep needs at least one seed");
  std::vector<SweepRow> rows;
  for (const auto& scene : scenes) {
    SweepRow row;
    row.p = exact_fraction(scene);
    const auto plan = plan_iterations(row.p);
    row.iterations = plan.iterations;
    const QuantumSampler sampler(scene, plan);
    for (auto seed : seeds) {
      row.classical_mean_calls += static_cast<double>(classical_rejection_sample(scene, m, seed).stats.oracle_calls);
      row.quantum_mean_calls += static_cast<double>(sampler.sample(m, seed).stats.oracle_calls);
    }
    row.classical_mean_calls /= static_cast<double>(seeds.size());
    row.quantum_mean_calls /= static_cast<double>(seeds.size());
    row.classical_analytic = expected_queries(m, row.p, SamplerBackend::classical);
    row.quantum_analytic = expected_queries(m, row.p, SamplerBackend::quantum);
    row.ratio = row.quantum_mean_calls / row.classical_mean_calls;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qdisc::grover
