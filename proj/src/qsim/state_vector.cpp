#include "qdisc/qsim/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qdisc/errors.hpp"

namespace qdisc::qsim {

namespace {

void check_width(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw CapacityError("state width " + std::to_string(num_qubits) + " outside [1, " + std::to_string(kMaxQubits) +
                        "] qubits");
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_width(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  s.set_basis(index);
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || !std::has_single_bit(n)) throw ShapeError("amplitude count must be a power of two >= 2");
  StateVector s(std::countr_zero(n));
  s.amps_ = std::move(amplitudes);
  return s;
}

StateVector StateVector::random(int num_qubits, std::mt19937_64& rng) {
  StateVector s(num_qubits);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& a : s.amps_) a = {g(rng), g(rng)};
  s.normalize();
  return s;
}

void StateVector::set_basis(std::uint64_t index) {
  if (index >= amps_.size()) throw ShapeError("basis index out of range");
  std::fill(amps_.begin(), amps_.end(), Amplitude{});
  amps_[index] = 1.0;
}

double StateVector::norm() const { return std::sqrt(kernels::parallel::norm_squared(amps_)); }

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

void StateVector::apply(const Gate& gate, Backend backend) {
  kernels::apply_gate(backend, amps_, num_qubits_, gate);
}

std::vector<double> StateVector::probabilities(std::span<const int> qubits) const {
  for (int q : qubits)
    if (q < 0 || q >= num_qubits_) throw ShapeError("register qubit outside the state");
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  kernels::parallel::register_probabilities(amps_, qubits, out);
  return out;
}

std::vector<double> StateVector::probabilities(const Register& reg) const { return probabilities(reg.qubits()); }

double StateVector::zero_weight(std::span<const int> qubits) const {
  std::uint64_t mask = 0;
  for (int q : qubits) mask |= std::uint64_t{1} << q;
  double w = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if ((i & mask) == 0) w += std::norm(amps_[i]);
  return w;
}

double StateVector::fidelity(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) throw ShapeError("fidelity between states of different width");
  Amplitude ip{};
  for (std::size_t i = 0; i < amps_.size(); ++i) ip += std::conj(amps_[i]) * other.amps_[i];
  return std::norm(ip);
}

StateVector::Dominant StateVector::dominant() const {
  Dominant d;
  double best = -1.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double m = std::abs(amps_[i]);
    if (m < kAmplitudeFloor) continue;
    if (m > best) {
      best = m;
      d = {i, amps_[i]};
    }
  }
  return d;
}

void apply_in_place(StateVector& state, const Circuit& circuit, const ApplyOptions& options) {
  if (circuit.num_qubits() != state.num_qubits())
    throw ShapeError("circuit acts on " + std::to_string(circuit.num_qubits()) + " qubits but the state has " +
                     std::to_string(state.num_qubits()));
  if (options.verify_clean_inputs && !circuit.clean_inputs().empty()) {
    const double w = state.zero_weight(circuit.clean_inputs());
    if (w < 1.0 - 1e-10)
      throw DirtyAncillaError("declared clean input qubits are not |0> (zero weight " + std::to_string(w) + ")");
  }
  kernels::apply_gates(options.backend, state.amplitudes(), state.num_qubits(), circuit.gates());
}

StateVector apply_circuit(StateVector state, const Circuit& circuit, const ApplyOptions& options) {
  apply_in_place(state, circuit, options);
  return state;
}

StateVector new_state(int num_qubits) { return StateVector(num_qubits); }

std::vector<std::uint64_t> measure(const StateVector& state, const Register& reg, std::mt19937_64& rng,
                                   std::size_t shots) {
  if (shots == 0) throw DomainError("measure needs at least one shot");
  const auto probs = state.probabilities(reg);
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  std::uniform_real_distribution<double> u(0.0, acc);
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double r = u(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    // Never land on a zero-probability tail bin through rounding.
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    while (probs[idx] == 0.0 && idx > 0) --idx;
    out.push_back(idx);
  }
  return out;
}

}  // namespace qdisc::qsim
