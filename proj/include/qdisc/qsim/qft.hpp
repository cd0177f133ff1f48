#pragma once

#include <span>

#include "qdisc/qsim/circuit.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::qsim {

// Discrete Fourier transform on the register's computational basis:
// |x> -> 2^{-w/2} sum_k exp(2 pi i x k / 2^w) |k>. H + controlled-phase ladder
// followed by the bit-reversal swaps.
Circuit qft(const Register& reg, int num_qubits);

// Same transform without the trailing swaps: the output value k is left
// bit-reversed across `qubits` (qubits[w-1-j] carries bit j of k).
Circuit qft_unswapped(std::span<const int> qubits, int num_qubits);

}  // namespace qdisc::qsim
