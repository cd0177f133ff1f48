#pragma once

#include <cstdint>

#include "qdisc/qsim/circuit.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::arith {

using qsim::Circuit;
using qsim::Register;

// A classical non-negative constant together with the bit width it claims.
struct ConstantOperand {
  std::uint64_t value = 0;
  int width = 1;

  // Smallest width that holds `value` (at least 1).
  ConstantOperand(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  // Throws DomainError unless value < 2^width.
  ConstantOperand(std::uint64_t value, int width);
};

// (-1)^sign * magnitude, with zero always carrying sign 0.
struct SignedMagnitude {
  Register sign;
  Register magnitude;
};

// Every builder returns a circuit over a host of `num_qubits` qubits and
// declares the registers it needs clean as the circuit's clean inputs.

// |x> -> |x + k mod 2^w>.
Circuit add_const_inplace(int num_qubits, const Register& target, ConstantOperand k);

// |a>|b> -> |a>|a + b mod 2^|b|>.
Circuit add_register_inplace(int num_qubits, const Register& source, const Register& target);

// |a>|0> -> |a>|a + k>. The output must be wide enough that nothing wraps.
Circuit add_const_outplace(int num_qubits, const Register& source, const Register& out, ConstantOperand k);

// |x>|0> -> |x>|k x>.
Circuit mult_const_outplace(int num_qubits, const Register& source, const Register& out, ConstantOperand k);

// |x>|y> -> |x>|y + x^2 mod 2^|y|>.
Circuit add_square_inplace(int num_qubits, const Register& x, const Register& y);

// On the joint value (extension as the top bit): |0>|x> -> |2^n - x>.
Circuit negate_mod(int num_qubits, const Register& extension, const Register& x);

// |x>|0> -> |x>|x < c>. `scratch` is the one-qubit extension used for the
// subtraction and is returned to |0>. Accepts 0 <= c <= 2^|x|.
Circuit threshold_compare(int num_qubits, const Register& x, const Register& flag, const Register& scratch,
                          ConstantOperand c);

// |x>|0>|0>|0> -> |x>|0>|0>||x - k|>.
Circuit abs_diff_const(int num_qubits, const Register& x, const Register& alpha, const Register& extension,
                       const Register& out, ConstantOperand k);

// Registers for the squared distance to (c1, c2). When dx and dy name the
// same register, each difference is uncomputed right after it is squared and
// the register ends at |0>; otherwise both differences are kept.
struct DistanceRegisters {
  Register x, y;
  Register dx, dy;
  Register dist;
  Register alpha, extension;
};

bool shares_difference_register(const DistanceRegisters& regs);

Circuit euclid_sq_dist(int num_qubits, const DistanceRegisters& regs, ConstantOperand c1, ConstantOperand c2);

// |x>|y>|0> -> |x>|y>|x v2 - y v1> with x and y in sign-magnitude form and the
// result in two's complement over |out|.
Circuit vector_cross_product(int num_qubits, const SignedMagnitude& x, const SignedMagnitude& y,
                             const Register& out, std::int64_t v1, std::int64_t v2);

// Bits needed to hold every value of x v2 - y v1 in two's complement for
// magnitudes below 2^magnitude_bits.
int cross_product_width(int magnitude_bits, std::int64_t v1, std::int64_t v2);

}  // namespace qdisc::arith
