#include <omp.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qdisc/qsim/kernels.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::qsim::kernels::parallel {

namespace {

// Below this many loop iterations thread start-up costs more than it saves.
constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;

// Indices per work item when a subspace walk is split across threads.
constexpr std::int64_t kBlock = std::int64_t{1} << 12;

// Qubits below this index form one cache-resident chunk (2^14 amplitudes,
// 256 KiB) in the blocked executor.
constexpr int kLocalQubits = 14;

// Basis indices with every constrained position fixed: targets at 0 and
// controls at their firing value. `count` indices in total, visited in
// increasing order.
struct Subspace {
  std::vector<int> positions;  // ascending
  std::uint64_t pinned = 0;    // mask of constrained positions
  std::uint64_t fixed = 0;
  std::int64_t count = 0;

  void pin(int q, bool one) {
    positions.push_back(q);
    pinned |= std::uint64_t{1} << q;
    if (one) fixed |= std::uint64_t{1} << q;
  }

  void finish(int num_qubits) {
    std::sort(positions.begin(), positions.end());
    count = std::int64_t{1} << (num_qubits - static_cast<int>(positions.size()));
  }

  // Free bits of the k-th index (zeros inserted at the pinned positions).
  std::uint64_t spread(std::uint64_t k) const {
    for (int p : positions) {
      const std::uint64_t low = k & ((std::uint64_t{1} << p) - 1);
      k = ((k >> p) << (p + 1)) | low;
    }
    return k;
  }

  // Calls f(index) for indices begin..end-1. The masked increment
  // ((x | pinned) + 1) & ~pinned steps through the free-bit patterns in order.
  template <class F>
  void walk(std::int64_t begin, std::int64_t end, F&& f) const {
    std::uint64_t x = spread(static_cast<std::uint64_t>(begin));
    for (std::int64_t k = begin; k < end; ++k) {
      f(x | fixed);
      x = ((x | pinned) + 1) & ~pinned;
    }
  }
};

Subspace subspace_of(int num_qubits, const Gate& gate) {
  Subspace s;
  for (int t = 0; t < gate.num_targets(); ++t) s.pin(gate.targets[static_cast<std::size_t>(t)], false);
  for (const auto& c : gate.controls) s.pin(c.qubit, c.polarity);
  s.finish(num_qubits);
  return s;
}

// Plain complex product; std::complex's operator* takes the NaN-recovery
// path without -ffast-math.
inline void mul_in_place(Amplitude& a, const Amplitude& f) {
  const double re = a.real() * f.real() - a.imag() * f.imag();
  const double im = a.real() * f.imag() + a.imag() * f.real();
  a = {re, im};
}

struct Update {
  GateKind kind;
  std::uint64_t t0;
  std::uint64_t t1;
  Amplitude factor;
};

Update update_of(const Gate& g) {
  return {g.kind, std::uint64_t{1} << g.targets[0], g.kind == GateKind::Swap ? std::uint64_t{1} << g.targets[1] : 0,
          g.kind == GateKind::Z ? Amplitude{-1.0, 0.0} : std::polar(1.0, g.angle)};
}

// Dispatches on the kind once, outside the index loop.
template <class Walk>
void run(const Update& u, Amplitude* a, Walk&& walk) {
  switch (u.kind) {
    case GateKind::X:
      walk([&](std::uint64_t i) { std::swap(a[i], a[i | u.t0]); });
      break;
    case GateKind::H: {
      constexpr double s = 0.70710678118654752440;
      walk([&](std::uint64_t i) {
        const Amplitude x = a[i];
        const Amplitude y = a[i | u.t0];
        a[i] = {(x.real() + y.real()) * s, (x.imag() + y.imag()) * s};
        a[i | u.t0] = {(x.real() - y.real()) * s, (x.imag() - y.imag()) * s};
      });
      break;
    }
    case GateKind::Z:
    case GateKind::Phase:
      walk([&](std::uint64_t i) { mul_in_place(a[i | u.t0], u.factor); });
      break;
    case GateKind::Swap:
      walk([&](std::uint64_t i) { std::swap(a[i | u.t0], a[i | u.t1]); });
      break;
  }
}

// A gate restricted to one chunk: conditions on high qubits are checked once
// per chunk, the rest is a subspace walk inside the chunk.
struct LocalOp {
  Update update;
  Subspace sub;
  std::uint64_t high_mask = 0;
  std::uint64_t high_value = 0;
};

bool is_local(const Gate& g, int local) {
  if (g.is_diagonal()) return true;
  for (int t = 0; t < g.num_targets(); ++t)
    if (g.targets[static_cast<std::size_t>(t)] >= local) return false;
  return true;
}

LocalOp localize(const Gate& g, int local) {
  LocalOp op{update_of(g), {}, 0, 0};
  op.update.t0 = op.update.t1 = 0;
  // A diagonal gate on a high target behaves like a control on that qubit
  // with the factor applied across the matching chunk (t0 stays 0).
  for (int t = 0; t < g.num_targets(); ++t) {
    const int q = g.targets[static_cast<std::size_t>(t)];
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (q < local) {
      op.sub.pin(q, false);
      (t == 0 ? op.update.t0 : op.update.t1) = bit;
    } else {
      op.high_mask |= bit;
      op.high_value |= bit;
    }
  }
  for (const auto& c : g.controls) {
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (c.qubit < local) {
      op.sub.pin(c.qubit, c.polarity);
    } else {
      op.high_mask |= bit;
      if (c.polarity) op.high_value |= bit;
    }
  }
  op.sub.finish(local);
  return op;
}

}  // namespace

void apply_gate(std::span<Amplitude> amps, int num_qubits, const Gate& gate) {
  const Subspace sub = subspace_of(num_qubits, gate);
  const Update u = update_of(gate);
  Amplitude* a = amps.data();
  const std::int64_t blocks = (sub.count + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static) if (sub.count >= kParallelThreshold)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t begin = b * kBlock;
    const std::int64_t end = std::min(sub.count, begin + kBlock);
    run(u, a, [&](auto&& f) { sub.walk(begin, end, f); });
  }
}

void apply_gates(std::span<Amplitude> amps, int num_qubits, std::span<const Gate> gates) {
  const int local = std::min(num_qubits, kLocalQubits);
  const std::int64_t chunks = std::int64_t{1} << (num_qubits - local);
  const std::uint64_t chunk_size = std::uint64_t{1} << local;
  std::vector<LocalOp> ops;
  std::size_t i = 0;
  while (i < gates.size()) {
    if (!is_local(gates[i], local)) {
      apply_gate(amps, num_qubits, gates[i]);
      ++i;
      continue;
    }
    ops.clear();
    for (; i < gates.size() && is_local(gates[i], local); ++i) ops.push_back(localize(gates[i], local));
    Amplitude* a = amps.data();
#pragma omp parallel for schedule(static) if (chunks > 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t base = static_cast<std::uint64_t>(c) * chunk_size;
      Amplitude* chunk = a + base;
      for (const auto& op : ops)
        if ((base & op.high_mask) == op.high_value)
          run(op.update, chunk, [&](auto&& f) { op.sub.walk(0, op.sub.count, f); });
    }
  }
}

double norm_squared(std::span<const Amplitude> amps) {
  const auto n = static_cast<std::int64_t>(amps.size());
  const Amplitude* a = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

void register_probabilities(std::span<const Amplitude> amps, std::span<const int> qubits, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const auto n = static_cast<std::int64_t>(amps.size());
  const Amplitude* a = amps.data();
  const std::size_t bins = out.size();
#pragma omp parallel if (n >= kParallelThreshold)
  {
    std::vector<double> local(bins, 0.0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) local[decode_int(static_cast<std::uint64_t>(i), qubits)] += std::norm(a[i]);
#pragma omp critical
    for (std::size_t b = 0; b < bins; ++b) out[b] += local[b];
  }
}

}  // namespace qdisc::qsim::kernels::parallel
