#include "qdisc/qsim/qft.hpp"

#include <numbers>

namespace qdisc::qsim {

Circuit qft_unswapped(std::span<const int> qubits, int num_qubits) {
  Circuit c(num_qubits);
  const int w = static_cast<int>(qubits.size());
  for (int i = w - 1; i >= 0; --i) {
    c.add(Gate::h(qubits[static_cast<std::size_t>(i)]));
    for (int j = i - 1; j >= 0; --j) {
      const double angle = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (i - j));
      c.add(Gate::phase(qubits[static_cast<std::size_t>(i)], angle).with_control(qubits[static_cast<std::size_t>(j)]));
    }
  }
  return c;
}

Circuit qft(const Register& reg, int num_qubits) {
  const auto qs = reg.qubits();
  Circuit c = qft_unswapped(qs, num_qubits);
  for (int i = 0; i < reg.width / 2; ++i) c.add(Gate::swap(reg.qubit(i), reg.qubit(reg.width - 1 - i)));
  return c;
}

}  // namespace qdisc::qsim
