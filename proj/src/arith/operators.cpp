#include "qdisc/arith/operators.hpp"

#include <bit>
#include <cstdlib>
#include <string>
#include <vector>

#include "qdisc/arith/emit.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/qsim/qft.hpp"

namespace qdisc::arith {

namespace {

void require_single(const Register& r, const char* what) {
  if (r.width != 1) throw ShapeError(std::string(what) + " must be a single qubit, got width " + std::to_string(r.width));
}

void require_width_at_least(const Register& r, int width, const char* what) {
  if (r.width < width)
    throw CapacityError(std::string(what) + " needs at least " + std::to_string(width) + " qubits, register '" +
                        r.name + "' has " + std::to_string(r.width));
}

void disjoint(std::initializer_list<const Register*> regs) {
  std::vector<Register> list;
  for (const auto* r : regs) list.push_back(*r);
  qsim::require_disjoint(list);
}

}  // namespace

ConstantOperand::ConstantOperand(std::uint64_t v) : value(v), width(std::max(1, static_cast<int>(std::bit_width(v)))) {}

ConstantOperand::ConstantOperand(std::uint64_t v, int w) : value(v), width(w) {
  if (w < 1 || w > 63 || v >= (std::uint64_t{1} << w))
    throw DomainError("constant " + std::to_string(v) + " does not fit in " + std::to_string(w) + " bits");
}

Circuit add_const_inplace(int num_qubits, const Register& target, ConstantOperand k) {
  if (k.width > target.width)
    throw DomainError("constant width " + std::to_string(k.width) + " exceeds target width " +
                      std::to_string(target.width));
  Circuit c(num_qubits);
  emit_add_const(c, target.qubits(), static_cast<std::int64_t>(k.value));
  return c;
}

Circuit add_register_inplace(int num_qubits, const Register& source, const Register& target) {
  disjoint({&source, &target});
  require_width_at_least(target, source.width, "register addition target");
  Circuit c(num_qubits);
  emit_add_register(c, source.qubits(), target.qubits());
  return c;
}

Circuit add_const_outplace(int num_qubits, const Register& source, const Register& out, ConstantOperand k) {
  disjoint({&source, &out});
  require_width_at_least(out, std::max(source.width, k.width) + 1, "out-of-place constant addition");
  Circuit c(num_qubits);
  c.require_clean(out);
  emit_copy(c, source.qubits(), out.qubits());
  emit_add_const(c, out.qubits(), static_cast<std::int64_t>(k.value));
  return c;
}

Circuit mult_const_outplace(int num_qubits, const Register& source, const Register& out, ConstantOperand k) {
  disjoint({&source, &out});
  require_width_at_least(out, source.width + k.width, "constant multiplication");
  Circuit c(num_qubits);
  c.require_clean(out);
  if (k.value == 0) return c;
  const auto o = out.qubits();
  c.append(qsim::qft_unswapped(o, num_qubits));
  for (int j = 0; j < source.width; ++j) {
    const qsim::Control ctl{source.qubit(j), true};
    emit_fourier_add(c, o, static_cast<std::int64_t>(k.value << j), {&ctl, 1});
  }
  c.append(qsim::qft_unswapped(o, num_qubits).inverse());
  return c;
}

Circuit add_square_inplace(int num_qubits, const Register& x, const Register& y) {
  disjoint({&x, &y});
  require_width_at_least(y, 2 * x.width, "square accumulation");
  Circuit c(num_qubits);
  emit_add_square(c, x.qubits(), y.qubits());
  return c;
}

Circuit negate_mod(int num_qubits, const Register& extension, const Register& x) {
  require_single(extension, "negation extension");
  disjoint({&extension, &x});
  Circuit c(num_qubits);
  c.require_clean(extension);
  auto joint = x.qubits();
  joint.push_back(extension.qubit(0));
  for (int q : joint) c.add(qsim::Gate::x(q));
  emit_add_const(c, joint, (std::int64_t{1} << x.width) + 1);
  return c;
}

Circuit threshold_compare(int num_qubits, const Register& x, const Register& flag, const Register& scratch,
                          ConstantOperand c) {
  require_single(flag, "comparison flag");
  require_single(scratch, "comparison scratch");
  disjoint({&x, &flag, &scratch});
  Circuit circuit(num_qubits);
  circuit.require_clean(flag);
  circuit.require_clean(scratch);
  emit_less_than(circuit, x.qubits(), scratch.qubit(0), flag.qubit(0), c.value);
  return circuit;
}

Circuit abs_diff_const(int num_qubits, const Register& x, const Register& alpha, const Register& extension,
                       const Register& out, ConstantOperand k) {
  require_single(alpha, "absolute-difference alpha");
  require_single(extension, "absolute-difference extension");
  disjoint({&x, &alpha, &extension, &out});
  Circuit c(num_qubits);
  c.require_clean(alpha);
  c.require_clean(extension);
  c.require_clean(out);
  emit_abs_diff(c, x.qubits(), alpha.qubit(0), extension.qubit(0), out.qubits(), k.value);
  return c;
}

bool shares_difference_register(const DistanceRegisters& regs) {
  return regs.dx.offset == regs.dy.offset && regs.dx.width == regs.dy.width;
}

Circuit euclid_sq_dist(int num_qubits, const DistanceRegisters& r, ConstantOperand c1, ConstantOperand c2) {
  const bool shared = shares_difference_register(r);
  if (shared)
    disjoint({&r.x, &r.y, &r.dx, &r.dist, &r.alpha, &r.extension});
  else
    disjoint({&r.x, &r.y, &r.dx, &r.dy, &r.dist, &r.alpha, &r.extension});
  require_single(r.alpha, "distance alpha");
  require_single(r.extension, "distance extension");
  require_width_at_least(r.dist, 2 * std::max(r.dx.width, r.dy.width) + 1, "squared distance");

  Circuit c(num_qubits);
  for (const auto* reg : {&r.dx, &r.dy, &r.dist, &r.alpha, &r.extension}) c.require_clean(*reg);
  const int a = r.alpha.qubit(0);
  const int e = r.extension.qubit(0);
  const auto dist = r.dist.qubits();

  auto one_axis = [&](const Register& coord, const Register& diff, std::uint64_t centre) {
    Circuit part(num_qubits);
    emit_abs_diff(part, coord.qubits(), a, e, diff.qubits(), centre);
    c.append(part);
    emit_add_square(c, diff.qubits(), dist);
    if (shared) c.append(part.inverse());
  };
  one_axis(r.x, r.dx, c1.value);
  one_axis(r.y, r.dy, c2.value);
  return c;
}

int cross_product_width(int magnitude_bits, std::int64_t v1, std::int64_t v2) {
  const std::uint64_t max_mag = (std::uint64_t{1} << magnitude_bits) - 1;
  const std::uint64_t bound = max_mag * (static_cast<std::uint64_t>(std::llabs(v1)) +
                                         static_cast<std::uint64_t>(std::llabs(v2)));
  // Two's complement over w bits holds [-2^(w-1), 2^(w-1)).
  return static_cast<int>(std::bit_width(bound)) + 1;
}

Circuit vector_cross_product(int num_qubits, const SignedMagnitude& x, const SignedMagnitude& y, const Register& out,
                             std::int64_t v1, std::int64_t v2) {
  require_single(x.sign, "x sign");
  require_single(y.sign, "y sign");
  disjoint({&x.sign, &x.magnitude, &y.sign, &y.magnitude, &out});
  const int need = cross_product_width(std::max(x.magnitude.width, y.magnitude.width), v1, v2);
  require_width_at_least(out, need, "cross product");

  Circuit c(num_qubits);
  c.require_clean(out);
  emit_cross_product(c, x.sign.qubit(0), x.magnitude.qubits(), y.sign.qubit(0), y.magnitude.qubits(), out.qubits(), v1,
                     v2);
  return c;
}

}  // namespace qdisc::arith
