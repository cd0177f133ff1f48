#include "qdisc/arith/emit.hpp"

#include <numbers>
#include <vector>

#include "qdisc/errors.hpp"
#include "qdisc/qsim/qft.hpp"

namespace qdisc::arith {

namespace {

std::uint64_t mask_bits(int w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

void append_qft(Circuit& c, Qubits q) { c.append(qsim::qft_unswapped(q, c.num_qubits())); }
void append_iqft(Circuit& c, Qubits q) { c.append(qsim::qft_unswapped(q, c.num_qubits()).inverse()); }

std::vector<Control> with(Controls base, std::initializer_list<Control> extra) {
  std::vector<Control> out(base.begin(), base.end());
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace

void emit_fourier_add(Circuit& c, Qubits target, std::int64_t k, Controls controls) {
  const int w = static_cast<int>(target.size());
  if (w == 0) return;
  if (w > 32) throw CapacityError("fourier adder wider than 32 qubits");
  const std::uint64_t m = mask_bits(w);
  const std::uint64_t kk = static_cast<std::uint64_t>(k) & m;
  if (kk == 0) return;
  const double dim = static_cast<double>(std::uint64_t{1} << w);
  for (int i = 0; i < w; ++i) {
    // Qubit i of the unswapped transform carries weight 2^(w-1-i).
    const std::uint64_t turns = (kk << (w - 1 - i)) & m;
    if (turns == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(turns) / dim;
    if (angle > std::numbers::pi) angle -= 2.0 * std::numbers::pi;
    c.add(qsim::Gate::phase(target[static_cast<std::size_t>(i)], angle).with_controls(controls));
  }
}

void emit_add_const(Circuit& c, Qubits target, std::int64_t k, Controls controls) {
  if ((static_cast<std::uint64_t>(k) & mask_bits(static_cast<int>(target.size()))) == 0) return;
  append_qft(c, target);
  emit_fourier_add(c, target, k, controls);
  append_iqft(c, target);
}

void emit_add_register(Circuit& c, Qubits source, Qubits target, Controls controls) {
  qsim::require_disjoint({source, target});
  append_qft(c, target);
  for (std::size_t i = 0; i < source.size() && i < target.size(); ++i)
    emit_fourier_add(c, target, std::int64_t{1} << i, with(controls, {{source[i], true}}));
  append_iqft(c, target);
}

void emit_twos_negate(Circuit& c, Qubits target, Controls controls) {
  for (int q : target) c.add(qsim::Gate::x(q).with_controls(controls));
  emit_add_const(c, target, 1, controls);
}

void emit_copy(Circuit& c, Qubits source, Qubits target, Controls controls) {
  for (std::size_t i = 0; i < source.size() && i < target.size(); ++i)
    c.add(qsim::Gate::cx(source[i], target[i]).with_controls(controls));
}

void emit_less_than(Circuit& c, Qubits x, int scratch, int flag, std::uint64_t threshold) {
  const int n = static_cast<int>(x.size());
  if (threshold > (std::uint64_t{1} << n))
    throw DomainError("comparison constant " + std::to_string(threshold) + " exceeds 2^" + std::to_string(n));
  if (threshold == 0) return;
  std::vector<int> joint(x.begin(), x.end());
  joint.push_back(scratch);
  const auto t = static_cast<std::int64_t>(threshold);
  emit_add_const(c, joint, -t);
  c.add(qsim::Gate::cx(scratch, flag));
  emit_add_const(c, joint, t);
}

void emit_abs_diff(Circuit& c, Qubits x, int alpha, int ext, Qubits out, std::uint64_t k) {
  const int w = static_cast<int>(out.size());
  if (out.size() < x.size()) throw CapacityError("absolute-difference output narrower than its input");
  if (w >= 62 || k >= (std::uint64_t{1} << w))
    throw CapacityError("constant " + std::to_string(k) + " does not fit the " + std::to_string(w) +
                        "-qubit difference register");
  std::vector<int> joint(out.begin(), out.end());
  joint.push_back(ext);
  const Control on{alpha, true};
  const Control off{alpha, false};
  const auto kk = static_cast<std::int64_t>(k);

  emit_less_than(c, x, ext, alpha, k);
  emit_copy(c, x, out);
  // The remaining constant stages share one Fourier frame on (out, ext):
  // alpha = 1: complement, +(2^w + 1) gives 2^w - x, +k, -2^w gives k - x;
  // alpha = 0: -k gives x - k.
  for (int q : joint) c.add(qsim::Gate::x(q).with_control(alpha));
  c.append(qsim::qft_unswapped(joint, c.num_qubits()));
  emit_fourier_add(c, joint, (std::int64_t{1} << w) + 1 + kk - (std::int64_t{1} << w), {&on, 1});
  emit_fourier_add(c, joint, -kk, {&off, 1});
  c.append(qsim::qft_unswapped(joint, c.num_qubits()).inverse());
  emit_less_than(c, x, ext, alpha, k);
}

void emit_add_square(Circuit& c, Qubits x, Qubits y, Controls controls) {
  qsim::require_disjoint({x, y});
  const std::size_t n = x.size();
  append_qft(c, y);
  for (std::size_t i = 0; i < n; ++i) {
    emit_fourier_add(c, y, std::int64_t{1} << (2 * i), with(controls, {{x[i], true}}));
    for (std::size_t j = i + 1; j < n; ++j)
      emit_fourier_add(c, y, std::int64_t{1} << (i + j + 1), with(controls, {{x[i], true}, {x[j], true}}));
  }
  append_iqft(c, y);
}

void emit_cross_product(Circuit& c, int sx, Qubits x, int sy, Qubits y, Qubits out, std::int64_t v1, std::int64_t v2) {
  append_qft(c, out);
  // Each magnitude bit adds +-coeff * 2^i, the sign chosen by the operand's
  // sign qubit.
  auto accumulate = [&](int sign, Qubits mag, std::int64_t coeff) {
    if (coeff == 0) return;
    for (std::size_t i = 0; i < mag.size(); ++i) {
      const std::int64_t term = coeff * (std::int64_t{1} << i);
      for (bool negative : {false, true}) {
        const Control ctl[2] = {{mag[i], true}, {sign, negative}};
        emit_fourier_add(c, out, negative ? -term : term, ctl);
      }
    }
  };
  accumulate(sx, x, v2);
  accumulate(sy, y, -v1);
  append_iqft(c, out);
}

}  // namespace qdisc::arith
