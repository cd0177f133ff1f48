#include "qdisc/qsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qdisc/errors.hpp"

namespace qdisc::qsim {

Gate Gate::with_control(int q, bool polarity) const {
  Gate g = *this;
  g.controls.push_back({q, polarity});
  return g;
}

Gate Gate::with_controls(std::span<const Control> extra) const {
  Gate g = *this;
  g.controls.insert(g.controls.end(), extra.begin(), extra.end());
  return g;
}

Gate Gate::adjoint() const {
  Gate g = *this;
  if (g.kind == GateKind::Phase) g.angle = -g.angle;
  return g;
}

std::string to_string(const Gate& gate) {
  std::ostringstream os;
  switch (gate.kind) {
    case GateKind::X: os << "X"; break;
    case GateKind::H: os << "H"; break;
    case GateKind::Z: os << "Z"; break;
    case GateKind::Phase: os << "P(" << gate.angle << ")"; break;
    case GateKind::Swap: os << "SWAP"; break;
  }
  os << " q" << gate.targets[0];
  if (gate.kind == GateKind::Swap) os << " q" << gate.targets[1];
  if (!gate.controls.empty()) {
    os << " ctrl[";
    for (std::size_t i = 0; i < gate.controls.size(); ++i) {
      if (i) os << ",";
      os << (gate.controls[i].polarity ? "" : "!") << gate.controls[i].qubit;
    }
    os << "]";
  }
  return os.str();
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw ShapeError("circuit qubit count must be non-negative");
}

void Circuit::validate(const Gate& gate) const {
  std::set<int> used;
  auto check = [&](int q) {
    if (q < 0 || q >= num_qubits_)
      throw ShapeError("gate " + to_string(gate) + " references qubit outside [0, " +
                       std::to_string(num_qubits_) + ")");
    if (!used.insert(q).second) throw ShapeError("gate " + to_string(gate) + " repeats qubit " + std::to_string(q));
  };
  for (int t = 0; t < gate.num_targets(); ++t) check(gate.targets[static_cast<std::size_t>(t)]);
  for (const auto& c : gate.controls) check(c.qubit);
  if (gate.kind == GateKind::Phase && !std::isfinite(gate.angle))
    throw ShapeError("phase angle must be finite");
}

Circuit& Circuit::add(Gate gate) {
  validate(gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_)
    throw ShapeError("cannot append a " + std::to_string(other.num_qubits_) + "-qubit circuit to a " +
                     std::to_string(num_qubits_) + "-qubit circuit");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit& Circuit::append_controlled(const Circuit& other, std::span<const Control> controls) {
  if (controls.empty()) return append(other);
  for (const auto& g : other.gates_) add(g.with_controls(controls));
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(num_qubits_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->adjoint());
  return out;
}

void Circuit::require_clean(std::span<const int> qubits) {
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits_) throw ShapeError("clean-input qubit out of range");
    if (std::find(clean_inputs_.begin(), clean_inputs_.end(), q) == clean_inputs_.end()) clean_inputs_.push_back(q);
  }
}

void Circuit::require_clean(const Register& reg) { require_clean(reg.qubits()); }

std::vector<int> Circuit::touched_qubits() const {
  std::set<int> qs;
  for (const auto& g : gates_) {
    for (int t = 0; t < g.num_targets(); ++t) qs.insert(g.targets[static_cast<std::size_t>(t)]);
    for (const auto& c : g.controls) qs.insert(c.qubit);
  }
  return {qs.begin(), qs.end()};
}

std::size_t Circuit::count_kind(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

Circuit inverse(const Circuit& circuit) { return circuit.inverse(); }

}  // namespace qdisc::qsim
