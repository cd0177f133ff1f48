#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qdisc/qsim/circuit.hpp"
#include "qdisc/qsim/kernels.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::qsim {

using Amplitude = std::complex<double>;
using kernels::Backend;

inline constexpr int kMaxQubits = 26;
// Amplitudes below this magnitude are treated as zero when picking a dominant
// basis state.
inline constexpr double kAmplitudeFloor = 1e-12;

// Dense amplitude array over `num_qubits` qubits, basis index little-endian.
class StateVector {
 public:
  // |0...0>. Throws CapacityError outside [1, kMaxQubits].
  explicit StateVector(int num_qubits);

  static StateVector basis(int num_qubits, std::uint64_t index);
  // Takes ownership; the length must be a power of two matching a valid width.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
  // Haar-ish random normalized state (independent Gaussian components).
  static StateVector random(int num_qubits, std::mt19937_64& rng);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }

  void set_basis(std::uint64_t index);
  double norm() const;
  void normalize();

  void apply(const Gate& gate, Backend backend = Backend::parallel);

  // Probability of each value of `qubits` (little-endian), length 2^size.
  std::vector<double> probabilities(std::span<const int> qubits) const;
  std::vector<double> probabilities(const Register& reg) const;
  // Total weight on states where every listed qubit reads 0.
  double zero_weight(std::span<const int> qubits) const;

  // |<this|other>|^2.
  double fidelity(const StateVector& other) const;

  struct Dominant {
    std::uint64_t index = 0;
    Amplitude amplitude{};
  };
  Dominant dominant() const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

struct ApplyOptions {
  Backend backend = Backend::parallel;
  // Check the circuit's clean_inputs() before running (dirty-ancilla detection).
  bool verify_clean_inputs = false;
};

// Runs the gates in order. Throws ShapeError on a qubit-count mismatch and,
// in verification mode, DirtyAncillaError when a declared clean input is not |0>.
void apply_in_place(StateVector& state, const Circuit& circuit, const ApplyOptions& options = {});
StateVector apply_circuit(StateVector state, const Circuit& circuit, const ApplyOptions& options = {});

StateVector new_state(int num_qubits);

// Terminal-measurement sampling: draws `shots` independent outcomes of
// `reg` from the marginal distribution. The state is left untouched.
std::vector<std::uint64_t> measure(const StateVector& state, const Register& reg, std::mt19937_64& rng,
                                   std::size_t shots);

}  // namespace qdisc::qsim
