#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "qdisc/arith/operators.hpp"
#include "qdisc/errors.hpp"
#include "test_support.hpp"

using namespace qdisc;
using namespace qdisc::arith;
using qdisc::qsim::RegisterLayout;
using qdisc::qsim::RegisterRole;
using qdisc::testing::get;
using qdisc::testing::put;
using qdisc::testing::run_basis;

namespace {

constexpr double kDominant = 1.0 - 1e-9;

std::uint64_t classical_abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

TEST(AddConstInplace, Examples) {
  RegisterLayout L;
  auto t = L.add("t", 3, RegisterRole::coordinate);
  auto c = add_const_inplace(L.num_qubits(), t, 2);
  EXPECT_EQ(get(run_basis(c, 5).index, t), 7u);
  EXPECT_EQ(get(run_basis(add_const_inplace(3, t, 1), 7).index, t), 0u);
  EXPECT_TRUE(add_const_inplace(3, t, 0).empty());
}

TEST(AddConstInplace, ExhaustiveWidth3) {
  RegisterLayout L;
  auto t = L.add("t", 3, RegisterRole::coordinate);
  for (std::uint64_t k = 0; k < 8; ++k) {
    auto c = add_const_inplace(L.num_qubits(), t, k);
    for (std::uint64_t x = 0; x < 8; ++x) {
      auto r = run_basis(c, put(0, t, x));
      EXPECT_EQ(get(r.index, t), (x + k) % 8) << "x=" << x << " k=" << k;
      EXPECT_GE(r.magnitude, kDominant);
    }
  }
}

TEST(AddConstInplace, RejectsWideConstant) {
  qsim::Register t{"t", 0, 3, RegisterRole::coordinate};
  EXPECT_THROW(add_const_inplace(3, t, 8), DomainError);
}

TEST(AddRegisterInplace, ExhaustiveAndExamples) {
  RegisterLayout L;
  auto a = L.add("a", 3, RegisterRole::coordinate);
  auto b = L.add("b", 4, RegisterRole::accumulator);
  auto c = add_register_inplace(L.num_qubits(), a, b);
  for (std::uint64_t av = 0; av < 8; ++av)
    for (std::uint64_t bv = 0; bv < 16; ++bv) {
      auto r = run_basis(c, put(put(0, a, av), b, bv));
      EXPECT_EQ(get(r.index, a), av);
      EXPECT_EQ(get(r.index, b), (av + bv) % 16);
      EXPECT_GE(r.magnitude, kDominant);
    }
  EXPECT_EQ(get(run_basis(c, put(put(0, a, 3), b, 4)).index, b), 7u);
  EXPECT_EQ(get(run_basis(c, put(put(0, a, 5), b, 12)).index, b), 1u);
}

TEST(AddRegisterInplace, Overlap) {
  qsim::Register a{"a", 0, 3, RegisterRole::coordinate};
  qsim::Register b{"b", 2, 4, RegisterRole::accumulator};
  EXPECT_THROW(add_register_inplace(6, a, b), RegisterConflictError);
}

TEST(AddConstOutplace, Exhaustive) {
  RegisterLayout L;
  auto a = L.add("a", 3, RegisterRole::coordinate);
  auto out = L.add("out", 4, RegisterRole::accumulator);
  for (std::uint64_t k = 0; k < 8; ++k) {
    auto c = add_const_outplace(L.num_qubits(), a, out, k);
    for (std::uint64_t x = 0; x < 8; ++x) {
      auto r = run_basis(c, put(0, a, x));
      EXPECT_EQ(get(r.index, a), x);
      EXPECT_EQ(get(r.index, out), x + k);
      EXPECT_GE(r.magnitude, kDominant);
    }
  }
}

TEST(AddConstOutplace, DirtyOutputDetected) {
  RegisterLayout L;
  auto a = L.add("a", 3, RegisterRole::coordinate);
  auto out = L.add("out", 4, RegisterRole::accumulator);
  auto c = add_const_outplace(L.num_qubits(), a, out, 3);
  qsim::ApplyOptions check;
  check.verify_clean_inputs = true;
  EXPECT_THROW(qsim::apply_circuit(qsim::StateVector::basis(7, put(0, out, 1)), c, check), DirtyAncillaError);
}

TEST(MultConstOutplace, Exhaustive) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto out = L.add("out", 6, RegisterRole::accumulator);
  for (std::uint64_t k = 0; k < 8; ++k) {
    auto c = mult_const_outplace(L.num_qubits(), x, out, k);
    for (std::uint64_t xv = 0; xv < 8; ++xv) {
      auto r = run_basis(c, put(0, x, xv));
      EXPECT_EQ(get(r.index, x), xv);
      EXPECT_EQ(get(r.index, out), xv * k) << "x=" << xv << " k=" << k;
      EXPECT_GE(r.magnitude, kDominant);
    }
  }
}

TEST(AddSquareInplace, Exhaustive) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto y = L.add("y", 6, RegisterRole::accumulator);
  auto c = add_square_inplace(L.num_qubits(), x, y);
  for (std::uint64_t xv = 0; xv < 8; ++xv)
    for (std::uint64_t yv = 0; yv < 64; ++yv) {
      auto r = run_basis(c, put(put(0, x, xv), y, yv));
      EXPECT_EQ(get(r.index, x), xv);
      EXPECT_EQ(get(r.index, y), (yv + xv * xv) % 64);
      EXPECT_GE(r.magnitude, kDominant);
    }
  EXPECT_EQ(get(run_basis(c, put(put(0, x, 3), y, 1)).index, y), 10u);
  EXPECT_EQ(get(run_basis(c, put(0, x, 7)).index, y), 49u);
}

TEST(AddSquareInplace, TooNarrow) {
  qsim::Register x{"x", 0, 3, RegisterRole::coordinate};
  qsim::Register y{"y", 3, 5, RegisterRole::accumulator};
  EXPECT_THROW(add_square_inplace(8, x, y), CapacityError);
}

TEST(NegateMod, Exhaustive) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto e = L.add("e", 1, RegisterRole::ancilla);
  auto c = negate_mod(L.num_qubits(), e, x);
  for (std::uint64_t xv = 0; xv < 8; ++xv) {
    auto r = run_basis(c, put(0, x, xv));
    const std::uint64_t joint = get(r.index, x) | (get(r.index, e) << 3);
    EXPECT_EQ(joint, 8 - xv);
    EXPECT_GE(r.magnitude, kDominant);
  }
}

TEST(ThresholdCompare, ExhaustiveIncludingTopConstant) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto flag = L.add("flag", 1, RegisterRole::flag);
  auto scratch = L.add("scratch", 1, RegisterRole::ancilla);
  for (std::uint64_t cv = 0; cv <= 8; ++cv) {
    auto c = threshold_compare(L.num_qubits(), x, flag, scratch, cv);
    for (std::uint64_t xv = 0; xv < 8; ++xv) {
      auto r = run_basis(c, put(0, x, xv));
      EXPECT_EQ(get(r.index, x), xv);
      EXPECT_EQ(get(r.index, flag), xv < cv ? 1u : 0u) << "x=" << xv << " c=" << cv;
      EXPECT_EQ(get(r.index, scratch), 0u);
      EXPECT_GE(r.magnitude, kDominant);
    }
  }
  EXPECT_THROW(threshold_compare(L.num_qubits(), x, flag, scratch, 9), DomainError);
}

TEST(AbsDiffConst, ExhaustiveAncillasRestored) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto alpha = L.add("alpha", 1, RegisterRole::ancilla);
  auto ext = L.add("ext", 1, RegisterRole::ancilla);
  auto out = L.add("out", 3, RegisterRole::accumulator);
  for (std::uint64_t k = 0; k < 8; ++k) {
    auto c = abs_diff_const(L.num_qubits(), x, alpha, ext, out, k);
    for (std::uint64_t xv = 0; xv < 8; ++xv) {
      auto r = run_basis(c, put(0, x, xv));
      EXPECT_EQ(get(r.index, x), xv);
      EXPECT_EQ(get(r.index, out), classical_abs_diff(xv, k)) << "x=" << xv << " k=" << k;
      EXPECT_EQ(get(r.index, alpha), 0u);
      EXPECT_EQ(get(r.index, ext), 0u);
      EXPECT_GE(r.magnitude, kDominant);
    }
  }
}

TEST(AbsDiffConst, CentreOnUpperEdgeNeedsWiderOutput) {
  qsim::Register x{"x", 0, 3, RegisterRole::coordinate};
  qsim::Register a{"a", 3, 1, RegisterRole::ancilla};
  qsim::Register e{"e", 4, 1, RegisterRole::ancilla};
  qsim::Register narrow{"o", 5, 3, RegisterRole::accumulator};
  EXPECT_THROW(abs_diff_const(8, x, a, e, narrow, 8), CapacityError);
  qsim::Register wide{"o", 5, 4, RegisterRole::accumulator};
  auto c = abs_diff_const(9, x, a, e, wide, 8);
  for (std::uint64_t xv = 0; xv < 8; ++xv) EXPECT_EQ(get(run_basis(c, put(0, x, xv)).index, wide), 8 - xv);
}

namespace {

struct DistanceFixture {
  RegisterLayout L;
  DistanceRegisters r;
  explicit DistanceFixture(bool shared, int n = 3) {
    r.x = L.add("x", n, RegisterRole::coordinate);
    r.y = L.add("y", n, RegisterRole::coordinate);
    r.dx = L.add("dx", n, RegisterRole::ancilla);
    r.dy = shared ? r.dx : L.add("dy", n, RegisterRole::ancilla);
    r.dist = L.add("dist", 2 * n + 1, RegisterRole::accumulator);
    r.alpha = L.add("alpha", 1, RegisterRole::ancilla);
    r.extension = L.add("ext", 1, RegisterRole::ancilla);
  }
};

}  // namespace

TEST(EuclidSqDist, SharedModeAllPoints) {
  DistanceFixture f(true);
  for (auto [c1, c2] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {7, 0}}) {
    auto c = euclid_sq_dist(f.L.num_qubits(), f.r, c1, c2);
    for (std::uint64_t xv = 0; xv < 8; ++xv)
      for (std::uint64_t yv = 0; yv < 8; ++yv) {
        auto r = run_basis(c, put(put(0, f.r.x, xv), f.r.y, yv));
        const auto dx = classical_abs_diff(xv, c1), dy = classical_abs_diff(yv, c2);
        EXPECT_EQ(get(r.index, f.r.dist), dx * dx + dy * dy);
        EXPECT_EQ(get(r.index, f.r.dx), 0u);
        EXPECT_EQ(get(r.index, f.r.alpha), 0u);
        EXPECT_EQ(get(r.index, f.r.extension), 0u);
        EXPECT_EQ(get(r.index, f.r.x), xv);
        EXPECT_EQ(get(r.index, f.r.y), yv);
        EXPECT_GE(r.magnitude, kDominant);
      }
  }
}

TEST(EuclidSqDist, KeepModeExamples) {
  DistanceFixture f(false);
  auto c = euclid_sq_dist(f.L.num_qubits(), f.r, 1, 2);
  auto r = run_basis(c, put(put(0, f.r.x, 3), f.r.y, 0));
  EXPECT_EQ(get(r.index, f.r.dist), 8u);
  EXPECT_EQ(get(r.index, f.r.dx), 2u);
  EXPECT_EQ(get(r.index, f.r.dy), 2u);

  auto far = euclid_sq_dist(f.L.num_qubits(), f.r, 0, 0);
  EXPECT_EQ(get(run_basis(far, put(put(0, f.r.x, 7), f.r.y, 7)).index, f.r.dist), 98u);
  auto centre = euclid_sq_dist(f.L.num_qubits(), f.r, 5, 6);
  EXPECT_EQ(get(run_basis(centre, put(put(0, f.r.x, 5), f.r.y, 6)).index, f.r.dist), 0u);
}

namespace {

struct CrossFixture {
  RegisterLayout L;
  SignedMagnitude x, y;
  qsim::Register out;
  CrossFixture(int n, int out_width) {
    x.sign = L.add("sx", 1, RegisterRole::sign);
    x.magnitude = L.add("x", n, RegisterRole::coordinate);
    y.sign = L.add("sy", 1, RegisterRole::sign);
    y.magnitude = L.add("y", n, RegisterRole::coordinate);
    out = L.add("out", out_width, RegisterRole::accumulator);
  }
  std::uint64_t encode(std::int64_t xv, std::int64_t yv) const {
    std::uint64_t i = put(0, x.magnitude, static_cast<std::uint64_t>(std::llabs(xv)));
    i = put(i, x.sign, xv < 0 ? 1 : 0);
    i = put(i, y.magnitude, static_cast<std::uint64_t>(std::llabs(yv)));
    return put(i, y.sign, yv < 0 ? 1 : 0);
  }
  std::int64_t decode_out(std::uint64_t index) const {
    const auto raw = static_cast<std::int64_t>(get(index, out));
    return raw >= (std::int64_t{1} << (out.width - 1)) ? raw - (std::int64_t{1} << out.width) : raw;
  }
};

}  // namespace

TEST(VectorCrossProduct, Examples) {
  CrossFixture f(3, 8);
  auto c = vector_cross_product(f.L.num_qubits(), f.x, f.y, f.out, 1, 3);
  EXPECT_EQ(f.decode_out(run_basis(c, f.encode(2, 1)).index), 5);
  auto d = vector_cross_product(f.L.num_qubits(), f.x, f.y, f.out, 3, 1);
  EXPECT_EQ(f.decode_out(run_basis(d, f.encode(1, 2)).index), -5);
  EXPECT_EQ(f.decode_out(run_basis(d, f.encode(0, 0)).index), 0);
}

TEST(VectorCrossProduct, ExhaustiveSignedInputs) {
  for (auto [v1, v2] : {std::pair<std::int64_t, std::int64_t>{1, 3}, {-4, 7}, {-7, -7}, {0, 5}}) {
    CrossFixture f(3, cross_product_width(3, v1, v2));
    auto c = vector_cross_product(f.L.num_qubits(), f.x, f.y, f.out, v1, v2);
    for (std::int64_t xv = -7; xv <= 7; ++xv)
      for (std::int64_t yv = -7; yv <= 7; ++yv) {
        const auto in = f.encode(xv, yv);
        auto r = run_basis(c, in);
        EXPECT_EQ(f.decode_out(r.index), xv * v2 - yv * v1) << "x=" << xv << " y=" << yv;
        EXPECT_EQ(r.index & ~qsim::encode_int(0, f.out, (1u << f.out.width) - 1), in);
        EXPECT_GE(r.magnitude, kDominant);
      }
  }
}

TEST(VectorCrossProduct, NarrowOutputRejected) {
  CrossFixture f(3, 6);
  EXPECT_THROW(vector_cross_product(f.L.num_qubits(), f.x, f.y, f.out, 7, 7), CapacityError);
}

// Applying an operator to a uniform superposition of inputs gives the uniform
// superposition of the mapped outputs.
TEST(Linearity, UniformSuperpositionMapsPointwise) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto out = L.add("out", 6, RegisterRole::accumulator);
  auto c = mult_const_outplace(L.num_qubits(), x, out, 5);
  qsim::Circuit prep(L.num_qubits());
  for (int q : x.qubits()) prep.add(qsim::Gate::h(q));
  auto s = qsim::apply_circuit(qsim::apply_circuit(qsim::new_state(L.num_qubits()), prep), c);
  const double amp = 1 / std::sqrt(8.0);
  for (std::uint64_t xv = 0; xv < 8; ++xv) {
    const auto idx = put(put(0, x, xv), out, 5 * xv);
    EXPECT_NEAR(std::abs(s[idx] - qsim::Amplitude(amp)), 0.0, 1e-10);
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-10);
}

TEST(Reversibility, RoundTripOnRandomStates) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto alpha = L.add("alpha", 1, RegisterRole::ancilla);
  auto ext = L.add("ext", 1, RegisterRole::ancilla);
  auto out = L.add("out", 3, RegisterRole::accumulator);
  auto c = abs_diff_const(L.num_qubits(), x, alpha, ext, out, 5);
  EXPECT_GE(qdisc::testing::worst_round_trip(c, 100, 17), 1.0 - 1e-10);
}
