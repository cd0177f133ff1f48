#pragma once

// Gate-level building blocks shared by the register-level builders and the
// geometric oracles. They append to an existing circuit and address qubits
// through little-endian lists, so non-contiguous joint registers (a value
// plus an extension qubit, say) work the same as plain registers.

#include <cstdint>
#include <span>

#include "qdisc/qsim/circuit.hpp"

namespace qdisc::arith {

using qsim::Circuit;
using qsim::Control;
using Qubits = std::span<const int>;
using Controls = std::span<const Control>;

// Diagonal phases that add k (mod 2^w) to a w-qubit register that is
// currently in the basis produced by qft_unswapped.
void emit_fourier_add(Circuit& c, Qubits target, std::int64_t k, Controls controls = {});

// |v> -> |v + k mod 2^w>. Only the phase layer carries the controls.
void emit_add_const(Circuit& c, Qubits target, std::int64_t k, Controls controls = {});

// |a>|b> -> |a>|b + a mod 2^w>.
void emit_add_register(Circuit& c, Qubits source, Qubits target, Controls controls = {});

// Two's-complement negation: |v> -> |2^w - v mod 2^w>.
void emit_twos_negate(Circuit& c, Qubits target, Controls controls = {});

// |v>|t> -> |v>|t xor v> over the common low bits.
void emit_copy(Circuit& c, Qubits source, Qubits target, Controls controls = {});

// Flips `flag` iff the value on `x` is below c, using `scratch` as a one-qubit
// sign extension that is returned to |0>. Requires 0 <= c <= 2^|x|.
void emit_less_than(Circuit& c, Qubits x, int scratch, int flag, std::uint64_t threshold);

// |x>|0>|0>|0> -> |x>|0>|0>||x - k|>. `alpha` and `ext` are single qubits
// restored to |0>. Requires k < 2^|out| and |out| >= |x|.
void emit_abs_diff(Circuit& c, Qubits x, int alpha, int ext, Qubits out, std::uint64_t k);

// |x>|y> -> |x>|y + x^2 mod 2^|y|>.
void emit_add_square(Circuit& c, Qubits x, Qubits y, Controls controls = {});

// |sx,x>|sy,y>|t> -> |sx,x>|sy,y>|t + x v2 - y v1 mod 2^|out|> for
// sign-magnitude operands.
void emit_cross_product(Circuit& c, int sx, Qubits x, int sy, Qubits y, Qubits out, std::int64_t v1, std::int64_t v2);

}  // namespace qdisc::arith
