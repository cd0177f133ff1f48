// Reference kernels: full scan over every basis index, no cleverness. Kept
// deliberately plain so the parallel kernels have something to agree with.

#include <cmath>
#include <utility>

#include "qdisc/qsim/kernels.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::qsim::kernels::serial {

namespace {

bool controls_fire(std::uint64_t i, const Gate& gate) {
  for (const auto& c : gate.controls)
    if ((((i >> c.qubit) & 1U) != 0) != c.polarity) return false;
  return true;
}

}  // namespace

void apply_gate(std::span<Amplitude> amps, int num_qubits, const Gate& gate) {
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  const std::uint64_t t0 = std::uint64_t{1} << gate.targets[0];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Amplitude factor =
      gate.kind == GateKind::Z ? Amplitude{-1.0, 0.0} : std::polar(1.0, gate.angle);

  for (std::uint64_t i = 0; i < dim; ++i) {
    if (!controls_fire(i, gate)) continue;
    switch (gate.kind) {
      case GateKind::X:
        if (!(i & t0)) std::swap(amps[i], amps[i | t0]);
        break;
      case GateKind::H:
        if (!(i & t0)) {
          const Amplitude a = amps[i];
          const Amplitude b = amps[i | t0];
          amps[i] = (a + b) * inv_sqrt2;
          amps[i | t0] = (a - b) * inv_sqrt2;
        }
        break;
      case GateKind::Z:
      case GateKind::Phase:
        if (i & t0) amps[i] *= factor;
        break;
      case GateKind::Swap: {
        const std::uint64_t t1 = std::uint64_t{1} << gate.targets[1];
        if ((i & t0) && !(i & t1)) std::swap(amps[i], amps[(i ^ t0) | t1]);
        break;
      }
    }
  }
}

double norm_squared(std::span<const Amplitude> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

void register_probabilities(std::span<const Amplitude> amps, std::span<const int> qubits, std::span<double> out) {
  for (auto& p : out) p = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) out[decode_int(i, qubits)] += std::norm(amps[i]);
}

}  // namespace qdisc::qsim::kernels::serial
