#include "qdisc/qsim/register.hpp"

#include <algorithm>
#include <set>

#include "qdisc/errors.hpp"

namespace qdisc::qsim {

std::string_view to_string(RegisterRole role) {
  switch (role) {
    case RegisterRole::coordinate: return "coordinate";
    case RegisterRole::ancilla: return "ancilla";
    case RegisterRole::flag: return "flag";
    case RegisterRole::accumulator: return "accumulator";
    case RegisterRole::sign: return "sign";
  }
  return "unknown";
}

QubitList Register::qubits() const {
  QubitList out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = offset + i;
  return out;
}

bool Register::overlaps(const Register& other) const {
  if (width == 0 || other.width == 0) return false;
  return offset < other.end() && other.offset < end();
}

Register RegisterLayout::add(std::string name, int width, RegisterRole role) {
  if (width < 0) throw CapacityError("register '" + name + "' has negative width");
  for (const auto& r : registers_)
    if (r.name == name) throw RegisterConflictError("duplicate register name '" + name + "'");
  Register reg{std::move(name), next_, width, role};
  next_ += width;
  registers_.push_back(reg);
  return reg;
}

const Register& RegisterLayout::find(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw RegisterConflictError("no register named '" + std::string(name) + "'");
}

void require_disjoint(std::initializer_list<std::span<const int>> lists) {
  std::set<int> seen;
  for (auto list : lists) {
    for (int q : list) {
      if (!seen.insert(q).second)
        throw RegisterConflictError("qubit " + std::to_string(q) + " appears in more than one register");
    }
  }
}

void require_disjoint(std::span<const Register> registers) {
  for (std::size_t i = 0; i < registers.size(); ++i)
    for (std::size_t j = i + 1; j < registers.size(); ++j)
      if (registers[i].overlaps(registers[j]))
        throw RegisterConflictError("registers '" + registers[i].name + "' and '" + registers[j].name +
                                    "' overlap");
}

QubitList concat(std::initializer_list<std::span<const int>> parts) {
  QubitList out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::uint64_t encode_int(std::uint64_t index, std::span<const int> qubits, std::uint64_t value) {
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    const std::uint64_t bit = std::uint64_t{1} << qubits[b];
    if ((value >> b) & 1U)
      index |= bit;
    else
      index &= ~bit;
  }
  return index;
}

std::uint64_t encode_int(std::uint64_t index, const Register& reg, std::uint64_t value) {
  return encode_int(index, reg.qubits(), value);
}

std::uint64_t decode_int(std::uint64_t index, std::span<const int> qubits) {
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b) v |= ((index >> qubits[b]) & 1U) << b;
  return v;
}

std::uint64_t decode_int(std::uint64_t index, const Register& reg) {
  return (index >> reg.offset) & ((std::uint64_t{1} << reg.width) - 1);
}

}  // namespace qdisc::qsim
