#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "qdisc/qsim/circuit.hpp"

// Statevector update kernels.
//
// Two implementations live side by side. `serial` scans every basis index and
// tests the control/target bits directly; it is the reference the tests compare
// against. `parallel` enumerates only the subspace the gate acts on (controls
// fixed, targets zero) and splits that loop across OpenMP threads.
namespace qdisc::qsim::kernels {

using Amplitude = std::complex<double>;

enum class Backend { serial, parallel };

namespace serial {
void apply_gate(std::span<Amplitude> amps, int num_qubits, const Gate& gate);
double norm_squared(std::span<const Amplitude> amps);
void register_probabilities(std::span<const Amplitude> amps, std::span<const int> qubits,
                            std::span<double> out);
}  // namespace serial

namespace parallel {
void apply_gate(std::span<Amplitude> amps, int num_qubits, const Gate& gate);
// Cache-blocked execution of a gate sequence. Runs of gates whose
// non-diagonal targets lie in the low qubits are applied chunk by chunk;
// every amplitude sees the same operations in the same order as gate-by-gate
// application.
void apply_gates(std::span<Amplitude> amps, int num_qubits, std::span<const Gate> gates);
double norm_squared(std::span<const Amplitude> amps);
void register_probabilities(std::span<const Amplitude> amps, std::span<const int> qubits,
                            std::span<double> out);
}  // namespace parallel

inline void apply_gate(Backend backend, std::span<Amplitude> amps, int num_qubits, const Gate& gate) {
  if (backend == Backend::serial)
    serial::apply_gate(amps, num_qubits, gate);
  else
    parallel::apply_gate(amps, num_qubits, gate);
}

inline void apply_gates(Backend backend, std::span<Amplitude> amps, int num_qubits, std::span<const Gate> gates) {
  if (backend == Backend::serial) {
    for (const auto& g : gates) serial::apply_gate(amps, num_qubits, g);
  } else {
    parallel::apply_gates(amps, num_qubits, gates);
  }
}

}  // namespace qdisc::qsim::kernels
