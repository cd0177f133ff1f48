#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdisc::qsim {

// Little-endian qubit index list: element 0 holds bit 0 of the encoded value.
using QubitList = std::vector<int>;

enum class RegisterRole { coordinate, ancilla, flag, accumulator, sign };

std::string_view to_string(RegisterRole role);

// A named contiguous span of qubits. Integers are encoded little-endian: the
// qubit at `offset` carries bit 0.
struct Register {
  std::string name;
  int offset = 0;
  int width = 0;
  RegisterRole role = RegisterRole::ancilla;

  int qubit(int bit) const { return offset + bit; }
  int end() const { return offset + width; }
  QubitList qubits() const;
  bool overlaps(const Register& other) const;
  bool contains(int q) const { return q >= offset && q < end(); }
};

// Hands out non-overlapping registers on a single host state.
class RegisterLayout {
 public:
  Register add(std::string name, int width, RegisterRole role);
  // Registers added so far, in allocation order.
  const std::vector<Register>& registers() const { return registers_; }
  const Register& find(std::string_view name) const;
  int num_qubits() const { return next_; }

 private:
  std::vector<Register> registers_;
  int next_ = 0;
};

// Throws RegisterConflictError if any two lists share a qubit.
void require_disjoint(std::initializer_list<std::span<const int>> lists);
void require_disjoint(std::span<const Register> registers);

QubitList concat(std::initializer_list<std::span<const int>> parts);

// Write `value` into the bits of `qubits` inside basis index `index`.
std::uint64_t encode_int(std::uint64_t index, std::span<const int> qubits, std::uint64_t value);
std::uint64_t encode_int(std::uint64_t index, const Register& reg, std::uint64_t value);
std::uint64_t decode_int(std::uint64_t index, std::span<const int> qubits);
std::uint64_t decode_int(std::uint64_t index, const Register& reg);

}  // namespace qdisc::qsim
