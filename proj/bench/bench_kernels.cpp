// Serial reference kernels against the OpenMP kernels on the same workloads.
#include <benchmark/benchmark.h>

#include <random>

#include "qdisc/arith/operators.hpp"
#include "qdisc/geo/oracles.hpp"
#include "qdisc/qsim/kernels.hpp"
#include "qdisc/qsim/state_vector.hpp"

namespace {

using namespace qdisc;
using qsim::kernels::Backend;

std::vector<qsim::Amplitude> random_amplitudes(int n) {
  std::mt19937_64 rng(1);
  const auto s = qsim::StateVector::random(n, rng);
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

template <Backend B>
void BM_Hadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(n);
  int q = 0;
  for (auto _ : state) {
    qsim::kernels::apply_gate(B, amps, n, qsim::Gate::h(q));
    q = (q + 1) % n;
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

template <Backend B>
void BM_ControlledPhase(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(n);
  const auto g = qsim::Gate::phase(n - 1, 0.3).with_control(0, 1).with_control(n / 2, 1);
  for (auto _ : state) {
    qsim::kernels::apply_gate(B, amps, n, g);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

// A whole adder circuit: QFT, phase ladder, inverse QFT on the low qubits.
template <Backend B>
void BM_AdderCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsim::RegisterLayout L;
  auto a = L.add("a", n / 2, qsim::RegisterRole::coordinate);
  auto b = L.add("b", n - n / 2, qsim::RegisterRole::accumulator);
  const auto c = arith::add_register_inplace(L.num_qubits(), a, b);
  auto amps = random_amplitudes(n);
  for (auto _ : state) {
    qsim::kernels::apply_gates(B, amps, n, c.gates());
    benchmark::ClobberMemory();
  }
  state.counters["gates"] = static_cast<double>(c.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()) * (std::int64_t{1} << n));
}

// One pass of the feasibility oracle for a small rectangle scene.
template <Backend B>
void BM_RectOracle(benchmark::State& state) {
  geo::Scene scene;
  scene.n = static_cast<int>(state.range(0));
  const auto s = scene.side();
  scene.rectangles = {{0, s / 2, 0, s / 2}, {s / 4, s, s / 2, s}};
  const auto layout = geo::plan_oracle_layout(scene);
  const auto c = geo::feasibility_phase_oracle(scene, layout);
  auto amps = random_amplitudes(layout.num_qubits);
  for (auto _ : state) {
    qsim::kernels::apply_gates(B, amps, layout.num_qubits, c.gates());
    benchmark::ClobberMemory();
  }
  state.counters["qubits"] = layout.num_qubits;
  state.counters["gates"] = static_cast<double>(c.size());
}

BENCHMARK(BM_Hadamard<Backend::serial>)->DenseRange(14, 22, 4);
BENCHMARK(BM_Hadamard<Backend::parallel>)->DenseRange(14, 22, 4);
BENCHMARK(BM_ControlledPhase<Backend::serial>)->DenseRange(14, 22, 4);
BENCHMARK(BM_ControlledPhase<Backend::parallel>)->DenseRange(14, 22, 4);
BENCHMARK(BM_AdderCircuit<Backend::serial>)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdderCircuit<Backend::parallel>)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RectOracle<Backend::serial>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RectOracle<Backend::parallel>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
