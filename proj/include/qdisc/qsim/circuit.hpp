#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdisc/qsim/register.hpp"

namespace qdisc::qsim {

enum class GateKind { X, H, Z, Phase, Swap };

struct Control {
  int qubit = 0;
  bool polarity = true;  // true: fires on |1>, false: fires on |0>
  bool operator==(const Control&) const = default;
};

// One primitive gate plus an arbitrary set of (possibly negated) controls.
// Swap is the only two-target kind; every other kind uses targets[0].
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 2> targets{-1, -1};
  double angle = 0.0;
  std::vector<Control> controls;

  static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0, {}}; }
  static Gate h(int q) { return {GateKind::H, {q, -1}, 0.0, {}}; }
  static Gate z(int q) { return {GateKind::Z, {q, -1}, 0.0, {}}; }
  static Gate phase(int q, double angle) { return {GateKind::Phase, {q, -1}, angle, {}}; }
  static Gate swap(int a, int b) { return {GateKind::Swap, {a, b}, 0.0, {}}; }
  static Gate cx(int control, int target) { return x(target).with_control(control); }

  Gate with_control(int q, bool polarity = true) const;
  Gate with_controls(std::span<const Control> extra) const;
  Gate adjoint() const;

  int num_targets() const { return kind == GateKind::Swap ? 2 : 1; }
  bool is_diagonal() const { return kind == GateKind::Z || kind == GateKind::Phase; }
  bool operator==(const Gate&) const = default;
};

std::string to_string(const Gate& gate);

// An ordered gate list over a fixed number of qubits. `clean_inputs` lists the
// qubits the builder requires to be |0> on entry; verification-mode
// application checks them.
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);
  // Appends `other` with every gate additionally conditioned on `controls`.
  Circuit& append_controlled(const Circuit& other, std::span<const Control> controls);

  Circuit inverse() const;

  const std::vector<int>& clean_inputs() const { return clean_inputs_; }
  void require_clean(std::span<const int> qubits);
  void require_clean(const Register& reg);

  // Distinct qubits referenced by any gate, sorted.
  std::vector<int> touched_qubits() const;
  std::size_t count_kind(GateKind kind) const;

  bool operator==(const Circuit& other) const { return num_qubits_ == other.num_qubits_ && gates_ == other.gates_; }

 private:
  void validate(const Gate& gate) const;

  int num_qubits_;
  std::vector<Gate> gates_;
  std::vector<int> clean_inputs_;
};

Circuit inverse(const Circuit& circuit);

}  // namespace qdisc::qsim
