#include "qdisc/verify/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "qdisc/arith/operators.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/geo/oracles.hpp"
#include "qdisc/qsim/state_vector.hpp"

namespace qdisc::verify {

namespace {

using qsim::Circuit;
using qsim::Register;
using qsim::RegisterRole;

enum class Role { input, output, aux };

struct Slot {
  Register reg;
  Role role;
};

struct Case {
  std::string label;
  Circuit circuit;
  std::vector<std::uint64_t> inputs;
  std::vector<std::uint64_t> expected;
};

struct OperatorDef {
  std::string name;
  std::string table_label;
  int num_qubits = 0;
  std::vector<Slot> slots;
  std::vector<Case> cases;

  Counts declared() const {
    Counts c;
    for (const auto& s : slots) (s.role == Role::input ? c.input : s.role == Role::output ? c.output : c.aux) += s.reg.width;
    return c;
  }
};

class Builder {
 public:
  Register add(const std::string& name, int width, Role role, RegisterRole kind = RegisterRole::ancilla) {
    auto r = layout_.add(name, width, kind);
    slots_.push_back({r, role});
    return r;
  }
  OperatorDef finish(std::string name, std::string label) const {
    OperatorDef d;
    d.name = std::move(name);
    d.table_label = std::move(label);
    d.num_qubits = layout_.num_qubits();
    d.slots = slots_;
    return d;
  }

 private:
  qsim::RegisterLayout layout_;
  std::vector<Slot> slots_;
};

std::uint64_t put(std::uint64_t index, const Register& r, std::uint64_t v) {
  return qsim::encode_int(index, r, v & ((std::uint64_t{1} << r.width) - 1));
}
std::uint64_t get(std::uint64_t index, const Register& r) { return qsim::decode_int(index, r); }

// Every assignment of values to `regs`, all other qubits 0.
std::vector<std::uint64_t> all_inputs(std::initializer_list<const Register*> regs) {
  int total = 0;
  for (const auto* r : regs) total += r->width;
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << total);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << total); ++v) {
    std::uint64_t index = 0, rest = v;
    for (const auto* r : regs) {
      index = put(index, *r, rest);
      rest >>= r->width;
    }
    out.push_back(index);
  }
  return out;
}

Case make_case(std::string label, Circuit c, std::vector<std::uint64_t> inputs,
               const std::function<std::uint64_t(std::uint64_t)>& reference) {
  Case k{std::move(label), std::move(c), std::move(inputs), {}};
  k.expected.reserve(k.inputs.size());
  for (auto in : k.inputs) k.expected.push_back(reference(in));
  return k;
}

std::uint64_t side(int n) { return std::uint64_t{1} << n; }

// Deterministic rectangles spread over the grid, including the full square
// and a single cell.
std::vector<geo::Rectangle> sample_rectangles(int n, std::uint64_t seed) {
  const auto s = static_cast<std::int64_t>(side(n));
  std::vector<geo::Rectangle> out{{0, s, 0, s}, {s / 2, s / 2, s - 1, s - 1}};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 4; ++i) {
    auto a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(s + 1));
    auto b = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(s + 1));
    auto c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(s + 1));
    auto d = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(s + 1));
    out.push_back({std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d)});
  }
  return out;
}

bool in_rect(const geo::Rectangle& r, std::uint64_t x, std::uint64_t y) {
  const auto sx = static_cast<std::int64_t>(x), sy = static_cast<std::int64_t>(y);
  return r.a1 <= sx && sx <= r.a2 && r.b1 <= sy && sy <= r.b2;
}

std::string rect_label(const geo::Rectangle& r) {
  std::ostringstream os;
  os << "R=(" << r.a1 << "," << r.a2 << "," << r.b1 << "," << r.b2 << ")";
  return os.str();
}

OperatorDef make_ico(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto s = b.add("s", 1, Role::output, RegisterRole::flag);
  auto aux = b.add("aux", 3, Role::aux);
  auto d = b.finish("interval_check", "ICO(a1,a2)");
  const auto inputs = all_inputs({&x});
  for (std::uint64_t a1 = 0; a1 <= side(n); ++a1)
    for (std::uint64_t a2 = a1; a2 <= side(n); ++a2)
      d.cases.push_back(make_case("a1=" + std::to_string(a1) + " a2=" + std::to_string(a2),
                                  geo::interval_check(d.num_qubits, x, aux, s, static_cast<std::int64_t>(a1),
                                                      static_cast<std::int64_t>(a2)),
                                  inputs, [&](std::uint64_t in) {
                                    const auto v = get(in, x);
                                    return put(in, s, a1 <= v && v <= a2 ? 1 : 0);
                                  }));
  return d;
}

OperatorDef make_rio(int n, std::uint64_t seed) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto y = b.add("y", n, Role::input, RegisterRole::coordinate);
  auto s = b.add("s", 1, Role::output, RegisterRole::flag);
  auto aux = b.add("aux", 5, Role::aux);
  auto d = b.finish("rect_inclusion", "RIO(R)");
  const auto inputs = all_inputs({&x, &y});
  for (const auto& r : sample_rectangles(n, seed))
    d.cases.push_back(make_case(rect_label(r), geo::rect_inclusion(d.num_qubits, x, y, aux, s, r), inputs,
                                [&](std::uint64_t in) { return put(in, s, in_rect(r, get(in, x), get(in, y)) ? 1 : 0); }));
  return d;
}

constexpr std::size_t kMrioRects = 3;

OperatorDef make_mrio(int n, std::uint64_t seed) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto y = b.add("y", n, Role::input, RegisterRole::coordinate);
  auto count = b.add("count", geo::counter_width(kMrioRects), Role::output, RegisterRole::accumulator);
  auto aux = b.add("aux", 6, Role::aux);
  auto d = b.finish("multi_rect_inclusion", "MRIO({R_i})");
  const auto inputs = all_inputs({&x, &y});
  auto rects = sample_rectangles(n, seed + 1);
  // The full square overlaps everything; keep three that overlap each other.
  const std::vector<geo::Rectangle> chosen{rects[2], rects[3], rects[0]};
  for (std::size_t m = 1; m <= kMrioRects; m += 2) {
    const std::vector<geo::Rectangle> list(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(m));
    std::string label = "m=" + std::to_string(m);
    for (const auto& r : list) label += " " + rect_label(r);
    d.cases.push_back(make_case(label, geo::multi_rect_inclusion(d.num_qubits, x, y, aux, count, list), inputs,
                                [&](std::uint64_t in) {
                                  std::uint64_t hits = 0;
                                  for (const auto& r : list) hits += in_rect(r, get(in, x), get(in, y)) ? 1 : 0;
                                  return put(in, count, hits);
                                }));
  }
  return d;
}

OperatorDef make_threshold(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto flag = b.add("flag", 1, Role::output, RegisterRole::flag);
  auto scratch = b.add("scratch", 1, Role::aux);
  auto d = b.finish("threshold_compare", "T");
  const auto inputs = all_inputs({&x});
  for (std::uint64_t c = 0; c <= side(n); ++c)
    d.cases.push_back(make_case("c=" + std::to_string(c),
                                arith::threshold_compare(d.num_qubits, x, flag, scratch, arith::ConstantOperand(c)),
                                inputs, [&](std::uint64_t in) { return put(in, flag, get(in, x) < c ? 1 : 0); }));
  return d;
}

OperatorDef make_negate(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto ext = b.add("ext", 1, Role::input, RegisterRole::sign);
  auto d = b.finish("negate_mod", "N");
  const auto joint = qsim::concat({x.qubits(), ext.qubits()});
  d.cases.push_back(make_case("", arith::negate_mod(d.num_qubits, ext, x), all_inputs({&x}), [&](std::uint64_t in) {
    const auto v = (side(n) - get(in, x)) & (side(n + 1) - 1);
    return qsim::encode_int(in, joint, v);
  }));
  return d;
}

OperatorDef make_mult(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto out = b.add("out", 2 * n, Role::output, RegisterRole::accumulator);
  auto d = b.finish("mult_const_outplace", "Mult(k)");
  const auto inputs = all_inputs({&x});
  for (std::uint64_t k = 0; k < side(n); ++k)
    d.cases.push_back(make_case("k=" + std::to_string(k),
                                arith::mult_const_outplace(d.num_qubits, x, out, arith::ConstantOperand(k, n)), inputs,
                                [&](std::uint64_t in) { return put(in, out, k * get(in, x)); }));
  return d;
}

OperatorDef make_add_const(int n, std::uint64_t) {
  Builder b;
  auto t = b.add("t", n, Role::input, RegisterRole::coordinate);
  auto d = b.finish("add_const_inplace", "Add_in(k)");
  const auto inputs = all_inputs({&t});
  for (std::uint64_t k = 0; k < side(n); ++k)
    d.cases.push_back(make_case("k=" + std::to_string(k),
                                arith::add_const_inplace(d.num_qubits, t, arith::ConstantOperand(k, n)), inputs,
                                [&](std::uint64_t in) { return put(in, t, get(in, t) + k); }));
  return d;
}

OperatorDef make_add_register(int n, std::uint64_t) {
  Builder b;
  auto a = b.add("a", n, Role::input, RegisterRole::coordinate);
  auto t = b.add("b", n, Role::input, RegisterRole::accumulator);
  auto d = b.finish("add_register_inplace", "Add_in");
  d.cases.push_back(make_case("", arith::add_register_inplace(d.num_qubits, a, t), all_inputs({&a, &t}),
                              [&](std::uint64_t in) { return put(in, t, get(in, a) + get(in, t)); }));
  return d;
}

OperatorDef make_abs_diff(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto out = b.add("out", n + 1, Role::output, RegisterRole::accumulator);
  auto alpha = b.add("alpha", 1, Role::aux, RegisterRole::flag);
  auto ext = b.add("ext", 1, Role::aux);
  auto d = b.finish("abs_diff_const", "AbsDiff(k)");
  const auto inputs = all_inputs({&x});
  for (std::uint64_t k = 0; k <= side(n); ++k)
    d.cases.push_back(make_case("k=" + std::to_string(k),
                                arith::abs_diff_const(d.num_qubits, x, alpha, ext, out, arith::ConstantOperand(k)), inputs,
                                [&](std::uint64_t in) {
                                  const auto v = get(in, x);
                                  return put(in, out, v > k ? v - k : k - v);
                                }));
  return d;
}

OperatorDef make_add_square(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto y = b.add("y", 2 * n, Role::output, RegisterRole::accumulator);
  auto d = b.finish("add_square_inplace", "AddSqr_in");
  d.cases.push_back(make_case("", arith::add_square_inplace(d.num_qubits, x, y), all_inputs({&x, &y}),
                              [&](std::uint64_t in) {
                                const auto v = get(in, x);
                                return put(in, y, get(in, y) + v * v);
                              }));
  return d;
}

OperatorDef make_distance(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto y = b.add("y", n, Role::input, RegisterRole::coordinate);
  auto dist = b.add("dist", 2 * n + 1, Role::output, RegisterRole::accumulator);
  auto diff = b.add("diff", n, Role::aux);
  auto alpha = b.add("alpha", 1, Role::aux, RegisterRole::flag);
  auto ext = b.add("ext", 1, Role::aux);
  auto d = b.finish("euclid_sq_dist", "ED_in(c1,c2)");
  const auto inputs = all_inputs({&x, &y});
  const auto s = static_cast<std::int64_t>(side(n));
  const std::vector<std::pair<std::int64_t, std::int64_t>> centres{{std::max<std::int64_t>(0, s - 3), std::min<std::int64_t>(2, s - 1)},
                                                                   {0, s - 1}};
  for (const auto& [c1, c2] : centres) {
    const arith::DistanceRegisters regs{x, y, diff, diff, dist, alpha, ext};
    d.cases.push_back(make_case("c=(" + std::to_string(c1) + "," + std::to_string(c2) + ")",
                                arith::euclid_sq_dist(d.num_qubits, regs, static_cast<std::uint64_t>(c1),
                                                      static_cast<std::uint64_t>(c2)),
                                inputs, [&](std::uint64_t in) {
                                  const auto dx = static_cast<std::int64_t>(get(in, x)) - c1;
                                  const auto dy = static_cast<std::int64_t>(get(in, y)) - c2;
                                  return put(in, dist, static_cast<std::uint64_t>(dx * dx + dy * dy));
                                }));
  }
  return d;
}

std::vector<std::pair<std::int64_t, std::int64_t>> cross_vectors(int n) {
  const auto top = static_cast<std::int64_t>(side(n)) - 1;
  return {{1, std::min<std::int64_t>(3, top)}, {-(top + 1) / 2, top}, {top, top}};
}

int cross_width(int n) {
  int w = 1;
  for (const auto& [v1, v2] : cross_vectors(n)) w = std::max(w, arith::cross_product_width(n, v1, v2));
  return w;
}

OperatorDef make_cross(int n, std::uint64_t) {
  Builder b;
  auto x = b.add("x", n, Role::input, RegisterRole::coordinate);
  auto sx = b.add("sx", 1, Role::input, RegisterRole::sign);
  auto y = b.add("y", n, Role::input, RegisterRole::coordinate);
  auto sy = b.add("sy", 1, Role::input, RegisterRole::sign);
  auto out = b.add("out", cross_width(n), Role::output, RegisterRole::accumulator);
  auto d = b.finish("vector_cross_product", "VCP(v1,v2)");
  std::vector<std::uint64_t> inputs;
  // Zero carries sign 0.
  for (auto in : all_inputs({&x, &sx, &y, &sy}))
    if ((get(in, x) != 0 || get(in, sx) == 0) && (get(in, y) != 0 || get(in, sy) == 0)) inputs.push_back(in);
  for (const auto& [v1, v2] : cross_vectors(n)) {
    d.cases.push_back(make_case(
        "v=(" + std::to_string(v1) + "," + std::to_string(v2) + ")",
        arith::vector_cross_product(d.num_qubits, {sx, x}, {sy, y}, out, v1, v2), inputs, [&](std::uint64_t in) {
          const auto xv = static_cast<std::int64_t>(get(in, x)) * (get(in, sx) ? -1 : 1);
          const auto yv = static_cast<std::int64_t>(get(in, y)) * (get(in, sy) ? -1 : 1);
          return put(in, out, static_cast<std::uint64_t>(xv * v2 - yv * v1));
        }));
  }
  return d;
}

using Maker = OperatorDef (*)(int, std::uint64_t);

const std::vector<Maker>& makers() {
  static const std::vector<Maker> m{make_ico,       make_rio,      make_mrio,    make_threshold,
                                    make_negate,    make_mult,     make_add_const, make_add_register,
                                    make_abs_diff,  make_add_square, make_distance, make_cross};
  return m;
}

// Doubles the angle of the first phase gate.
Circuit corrupt(const Circuit& c) {
  Circuit out(c.num_qubits());
  out.require_clean(c.clean_inputs());
  bool done = false;
  for (auto g : c.gates()) {
    if (!done && g.kind == qsim::GateKind::Phase) {
      g.angle *= 2.0;
      done = true;
    }
    out.add(g);
  }
  return out;
}

std::string describe(const OperatorDef& d, std::uint64_t index) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : d.slots) {
    os << (first ? "" : " ") << s.reg.name << "=" << get(index, s.reg);
    first = false;
  }
  return os.str();
}

std::string failure(const OperatorDef& d, const Case& k, std::uint64_t in, std::uint64_t expected,
                    std::uint64_t got, double weight) {
  std::ostringstream os;
  os << d.name << (k.label.empty() ? "" : " [" + k.label + "]") << ": input {" << describe(d, in) << "} expected {"
     << describe(d, expected) << "} got {" << describe(d, got) << "} with weight " << weight;
  return os.str();
}

constexpr double kMinWeight = 1.0 - 1e-10;

void check_per_basis(const OperatorDef& d, const Case& k, const Circuit& c, OperatorResult& r) {
  qsim::StateVector state(d.num_qubits);
  for (std::size_t i = 0; i < k.inputs.size(); ++i) {
    state.set_basis(k.inputs[i]);
    qsim::apply_in_place(state, c);
    const double weight = std::norm(state[k.expected[i]]);
    r.worst_weight = std::min(r.worst_weight, weight);
    if (weight < kMinWeight && r.passed) {
      r.passed = false;
      r.first_failure = failure(d, k, k.inputs[i], k.expected[i], state.dominant().index, weight);
    }
  }
}

void check_batched(const OperatorDef& d, const Case& k, const Circuit& c, std::mt19937_64& rng, OperatorResult& r) {
  std::vector<std::uint64_t> sorted = k.expected;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::logic_error("batched check needs distinct images for " + d.name);
  const auto count = static_cast<double>(k.inputs.size());
  std::vector<qsim::Amplitude> amps(std::size_t{1} << d.num_qubits);
  std::vector<qsim::Amplitude> coeff(k.inputs.size());
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < k.inputs.size(); ++i) {
    coeff[i] = std::polar(1.0 / std::sqrt(count), angle(rng));
    amps[k.inputs[i]] = coeff[i];
  }
  auto state = qsim::StateVector::from_amplitudes(std::move(amps));
  qsim::apply_in_place(state, c);
  double mass = 0.0;
  for (std::size_t i = 0; i < k.inputs.size(); ++i) {
    const auto ratio = state[k.expected[i]] / coeff[i];
    mass += std::norm(state[k.expected[i]]);
    const double weight = std::norm(ratio);
    r.worst_weight = std::min(r.worst_weight, weight);
    if (std::abs(ratio - 1.0) > 1e-6 && r.passed) {
      r.passed = false;
      r.first_failure = failure(d, k, k.inputs[i], k.expected[i], state.dominant().index, weight);
    }
  }
  if (mass < kMinWeight && r.passed) {
    r.passed = false;
    r.first_failure = d.name + " [" + k.label + "]: " + std::to_string(1.0 - mass) + " of the weight left the expected images";
  }
}

OperatorResult check_operator(const OperatorDef& d, Strategy strategy, bool mutate, std::mt19937_64& rng) {
  OperatorResult r;
  r.name = d.name;
  r.table_label = d.table_label;
  r.strategy = strategy;
  r.cases = d.cases.size();
  for (const auto& k : d.cases) {
    r.inputs += k.inputs.size();
    const Circuit c = mutate ? corrupt(k.circuit) : k.circuit;
    if (strategy == Strategy::per_basis)
      check_per_basis(d, k, c, r);
    else
      check_batched(d, k, c, rng, r);
  }
  return r;
}

double round_trip_fidelity(const Circuit& c, int trials, std::mt19937_64& rng) {
  const auto inv = c.inverse();
  double worst = 1.0;
  for (int t = 0; t < trials; ++t) {
    const auto in = qsim::StateVector::random(c.num_qubits(), rng);
    auto s = in;
    qsim::apply_in_place(s, c);
    qsim::apply_in_place(s, inv);
    worst = std::min(worst, s.fidelity(in));
  }
  return worst;
}

// Largest case circuit of the operator, for the round-trip check.
const Case& heaviest(const OperatorDef& d) {
  return *std::max_element(d.cases.begin(), d.cases.end(),
                           [](const Case& a, const Case& b) { return a.circuit.size() < b.circuit.size(); });
}

struct OracleSample {
  std::string name;
  int num_qubits;
  Circuit circuit;
};

std::vector<OracleSample> oracle_samples(int n) {
  const auto s = static_cast<std::int64_t>(side(n));
  std::vector<OracleSample> out;
  {
    qsim::RegisterLayout L;
    auto x = L.add("x", n, RegisterRole::coordinate), y = L.add("y", n, RegisterRole::coordinate);
    const geo::Circle circle{s / 2, s / 2, std::max<std::int64_t>(1, s / 4)};
    geo::CircleWork w{L.add("diff", geo::circle_diff_width(n, circle), RegisterRole::ancilla),
                      L.add("dist", geo::circle_dist_width(n, circle), RegisterRole::accumulator),
                      L.add("alpha", 1, RegisterRole::flag), L.add("ext", 1, RegisterRole::ancilla)};
    auto flag = L.add("s", 1, RegisterRole::flag);
    out.push_back({"circle_exclusion", L.num_qubits(), geo::circle_exclusion(L.num_qubits(), x, y, w, flag, circle)});
  }
  {
    const geo::ConvexPolygon tri{{{0, 0}, {s - 1, s / 2}, {s / 2, s - 1}}};
    qsim::RegisterLayout L;
    auto x = L.add("x", n, RegisterRole::coordinate), y = L.add("y", n, RegisterRole::coordinate);
    const int e = geo::polygon_extension_width(n, tri);
    geo::PolygonWork w{L.add("x_ext", e, RegisterRole::sign), L.add("y_ext", e, RegisterRole::sign),
                       L.add("cross", geo::polygon_cross_width(n, tri), RegisterRole::accumulator)};
    auto g = L.add("g_acc", geo::counter_width(tri.size()), RegisterRole::accumulator);
    out.push_back({"polygon_inclusion", L.num_qubits(), geo::polygon_inclusion(L.num_qubits(), x, y, w, g, tri)});
  }
  {
    geo::Scene scene{n, {{0, 0, s / 2, s}}, {{s - 1, 0, std::max<std::int64_t>(1, s / 2)}}, {}};
    const auto layout = geo::plan_oracle_layout(scene);
    out.push_back({"feasibility_phase_oracle", layout.num_qubits, geo::feasibility_phase_oracle(scene, layout)});
  }
  return out;
}

}  // namespace

std::string to_string(const Counts& c) {
  return "(" + std::to_string(c.input) + ", " + std::to_string(c.output) + ", " + std::to_string(c.aux) + ")";
}

const char* to_string(LedgerStatus status) {
  switch (status) {
    case LedgerStatus::match: return "match";
    case LedgerStatus::documented_deviation: return "documented deviation";
    case LedgerStatus::mismatch: return "MISMATCH";
  }
  return "?";
}

const char* to_string(Strategy s) { return s == Strategy::per_basis ? "per-basis" : "batched"; }

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto m : makers()) v.push_back(m(1, 0).name);
    return v;
  }();
  return names;
}

std::vector<LedgerRow> resource_ledger(int n) {
  struct Expect {
    Counts table;
    Counts pinned;
    std::string note;
  };
  const int m_out = geo::counter_width(kMrioRects);
  // Indexed like makers().
  const std::vector<Expect> expect{
      {{n, 1, 3}, {n, 1, 3}, ""},
      {{n, 1, 5}, {2 * n, 1, 5}, "both coordinate registers are inputs"},
      {{n, static_cast<int>(std::floor(std::log2(kMrioRects))), 6},
       {2 * n, m_out, 6},
       "both coordinates are inputs; the count needs ceil(log2(m+1)) bits to reach m"},
      {{n, 1, 1}, {n, 1, 1}, ""},
      {{n + 1, 0, 0}, {n + 1, 0, 0}, ""},
      {{n, 2 * n, 0}, {n, 2 * n, 0}, ""},
      {{n, 0, 0}, {n, 0, 0}, ""},
      {{n, 0, 0}, {2 * n, 0, 0}, "both addends are inputs"},
      {{n + 1, n + 1, 2}, {n, n + 1, 2}, "the input needs no sign extension; the extension qubit is counted as aux"},
      {{n, 2 * n, 0}, {n, 2 * n, 0}, ""},
      {{2 * n, 2 * n, n + 1},
       {2 * n, 2 * n + 1, n + 2},
       "the sum of two squares needs 2n+1 bits; aux is the shared difference plus alpha and the comparison extension"},
      {{2 * n, 2 * n, 1},
       {2 * n + 2, cross_width(n), 0},
       "sign qubits are inputs; the accumulator is sized for the worst case and the product needs no scratch"},
  };
  std::vector<LedgerRow> rows;
  for (std::size_t i = 0; i < makers().size(); ++i) {
    const auto d = makers()[i](n, 0);
    LedgerRow row{d.name, d.table_label, expect[i].table, d.declared(), expect[i].pinned, expect[i].note,
                  LedgerStatus::mismatch};
    if (row.declared == row.table)
      row.status = LedgerStatus::match;
    else if (row.declared == row.pinned)
      row.status = LedgerStatus::documented_deviation;
    rows.push_back(row);
  }

  // The circle test's register footprint: coordinates, difference, distance.
  const geo::Circle interior{1, 1, 1};
  const int footprint = 2 * n + geo::circle_diff_width(n, interior) + geo::circle_dist_width(n, interior);
  LedgerRow circle{"circle_exclusion",
                   "circle oracle qubits",
                   {5 * n + 1, 0, 0},
                   {footprint, 0, 0},
                   {5 * n + 1, 0, 0},
                   "x, y, difference and squared distance; alpha, extension and the result flag come on top",
                   LedgerStatus::mismatch};
  if (circle.declared == circle.table) circle.status = LedgerStatus::match;
  rows.push_back(circle);
  return rows;
}

bool VerifyReport::passed() const {
  for (const auto& o : operators)
    if (!o.passed) return false;
  for (const auto& l : ledger)
    if (l.status == LedgerStatus::mismatch) return false;
  for (const auto& r : reversibility)
    if (!r.passed) return false;
  return true;
}

std::string VerifyReport::format() const {
  std::ostringstream os;
  os << "operator checks at n=" << n << "\n";
  for (const auto& o : operators) {
    os << "  " << (o.passed ? "PASS " : "FAIL ") << o.name << " [" << o.table_label << "] " << o.cases << " cases, "
       << o.inputs << " inputs, " << to_string(o.strategy) << ", min weight " << o.worst_weight << "\n";
    if (!o.passed) os << "    first failure: " << o.first_failure << "\n";
  }
  os << "resource ledger (input, output, aux)\n";
  for (const auto& l : ledger) {
    os << "  " << (l.status == LedgerStatus::mismatch ? "FAIL " : "PASS ") << l.op << " [" << l.table_label
       << "] table " << to_string(l.table) << " declared " << to_string(l.declared) << " " << to_string(l.status);
    if (l.status != LedgerStatus::match) os << " (expected " << to_string(l.pinned) << ": " << l.note << ")";
    os << "\n";
  }
  if (!reversibility.empty()) {
    os << "round trips (C then inverse C)\n";
    for (const auto& r : reversibility)
      os << "  " << (r.passed ? "PASS " : "FAIL ") << r.name << " n=" << r.n << " on " << r.num_qubits
         << " qubits, worst fidelity " << r.worst_fidelity << "\n";
  }
  os << (passed() ? "verify: PASS" : "verify: FAIL") << "\n";
  return os.str();
}

VerifyReport run_verify(const VerifyOptions& opt) {
  if (opt.n < 1 || opt.n > kMaxVerifyBits)
    throw CapacityError("verify supports 1 <= n <= " + std::to_string(kMaxVerifyBits) + ", got " +
                        std::to_string(opt.n));
  const auto& names = operator_names();
  if (opt.mutate && std::find(names.begin(), names.end(), *opt.mutate) == names.end())
    throw UsageError("unknown operator to mutate: " + *opt.mutate);
  const Strategy strategy = opt.strategy.value_or(opt.n <= 3 ? Strategy::per_basis : Strategy::batched);

  VerifyReport report;
  report.n = opt.n;
  std::mt19937_64 rng(opt.seed);
  for (auto make : makers()) {
    const auto d = make(opt.n, opt.seed);
    report.operators.push_back(check_operator(d, strategy, opt.mutate && *opt.mutate == d.name, rng));
  }
  report.ledger = resource_ledger(opt.n);

  if (opt.reversibility) {
    for (auto make : makers()) {
      int n = opt.n;
      auto d = make(n, opt.seed);
      while (d.num_qubits > opt.reversibility_max_qubits && n > 1) d = make(--n, opt.seed);
      const auto& k = heaviest(d);
      const Circuit c = opt.mutate && *opt.mutate == d.name ? corrupt(k.circuit) : k.circuit;
      const double f = round_trip_fidelity(c, opt.reversibility_trials, rng);
      report.reversibility.push_back({d.name, n, d.num_qubits, f, f >= 1.0 - 1e-10});
    }
    int n = opt.n;
    auto samples = oracle_samples(n);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      int m = n;
      auto s = samples[i];
      while (s.num_qubits > opt.reversibility_max_qubits && m > 1) s = oracle_samples(--m)[i];
      const double f = round_trip_fidelity(s.circuit, opt.reversibility_trials, rng);
      report.reversibility.push_back({s.name, m, s.num_qubits, f, f >= 1.0 - 1e-10});
    }
  }
  return report;
}

}  // namespace qdisc::verify
