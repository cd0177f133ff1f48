#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "qdisc/errors.hpp"
#include "qdisc/geo/oracles.hpp"
#include "qdisc/geo/scene.hpp"
#include "test_support.hpp"

using namespace qdisc;
using namespace qdisc::geo;
using qdisc::qsim::RegisterLayout;
using qdisc::qsim::RegisterRole;
using qdisc::testing::get;
using qdisc::testing::put;
using qdisc::testing::run_basis;

namespace {

constexpr double kDominant = 1.0 - 1e-9;

// Point-in-shape predicates written out directly, without the library.
bool inside_rect(const Rectangle& r, std::int64_t x, std::int64_t y) {
  return x >= r.a1 && x <= r.a2 && y >= r.b1 && y <= r.b2;
}

bool outside_or_on_circle(const Circle& c, std::int64_t x, std::int64_t y) {
  return (x - c.c1) * (x - c.c1) + (y - c.c2) * (y - c.c2) >= c.r * c.r;
}

// Edges (counter-clockwise) with the point strictly on their right.
int edges_failing(const std::vector<GridPoint>& v, std::int64_t x, std::int64_t y) {
  int bad = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    if ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0) ++bad;
  }
  return bad;
}

struct RectRegs {
  RegisterLayout L;
  qsim::Register x, y, aux, s;
  explicit RectRegs(int n, int aux_width = 5, int s_width = 1) {
    x = L.add("x", n, RegisterRole::coordinate);
    y = L.add("y", n, RegisterRole::coordinate);
    aux = L.add("aux", aux_width, RegisterRole::ancilla);
    s = L.add("s", s_width, RegisterRole::flag);
  }
};

struct CircleRegs {
  RegisterLayout L;
  qsim::Register x, y, s;
  CircleWork w;
  CircleRegs(int n, const Circle& c) {
    x = L.add("x", n, RegisterRole::coordinate);
    y = L.add("y", n, RegisterRole::coordinate);
    w.diff = L.add("diff", circle_diff_width(n, c), RegisterRole::ancilla);
    w.dist = L.add("dist", circle_dist_width(n, c), RegisterRole::accumulator);
    w.alpha = L.add("alpha", 1, RegisterRole::flag);
    w.extension = L.add("ext", 1, RegisterRole::ancilla);
    s = L.add("s", 1, RegisterRole::flag);
  }
};

struct PolygonRegs {
  RegisterLayout L;
  qsim::Register x, y, g;
  PolygonWork w;
  PolygonRegs(int n, const ConvexPolygon& p) {
    x = L.add("x", n, RegisterRole::coordinate);
    y = L.add("y", n, RegisterRole::coordinate);
    const int e = polygon_extension_width(n, p);
    w.x_ext = L.add("x_ext", e, RegisterRole::sign);
    w.y_ext = L.add("y_ext", e, RegisterRole::sign);
    w.cross = L.add("cross", polygon_cross_width(n, p), RegisterRole::accumulator);
    g = L.add("g_acc", counter_width(p.size()), RegisterRole::accumulator);
  }
};

std::uint64_t point(const qsim::Register& x, const qsim::Register& y, std::int64_t px, std::int64_t py) {
  return put(put(0, x, static_cast<std::uint64_t>(px)), y, static_cast<std::uint64_t>(py));
}

// Runs one basis point and returns the value left in `out`, checking that the
// coordinates survive and every other qubit is clean.
std::uint64_t evaluate(const qsim::Circuit& c, const qsim::Register& x, const qsim::Register& y,
                       const qsim::Register& out, std::int64_t px, std::int64_t py) {
  const auto in = point(x, y, px, py);
  const auto r = run_basis(c, in);
  EXPECT_GE(r.magnitude, kDominant);
  const auto value = get(r.index, out);
  EXPECT_EQ(r.index, put(in, out, value)) << "work register left dirty at (" << px << "," << py << ")";
  return value;
}

// Value of `out` for every grid point from a single superposed run. Checks
// that the coordinates survive and every other qubit is clean.
std::vector<std::uint64_t> evaluate_grid(const qsim::Circuit& c, const qsim::Register& x, const qsim::Register& y,
                                         const qsim::Register& out) {
  const auto inputs = qsim::concat({x.qubits(), y.qubits()});
  const auto images = qdisc::testing::run_all_inputs(c, inputs);
  std::vector<std::uint64_t> values(images.size());
  for (std::uint64_t z = 0; z < images.size(); ++z) {
    EXPECT_NE(images[z], qdisc::testing::kNotClassical) << "grid point " << z;
    if (images[z] == qdisc::testing::kNotClassical) continue;
    values[z] = get(images[z], out);
    EXPECT_EQ(images[z], put(qsim::encode_int(0, inputs, z), out, values[z])) << "dirty work at grid point " << z;
  }
  return values;
}

Scene mixed_scene() {
  Scene s;
  s.n = 3;
  s.rectangles = {{0, 1, 5, 7}};
  s.circles = {{6, 2, 2}};
  s.polygons = {{{{1, 1}, {4, 2}, {2, 4}}}};
  return validate_scene(s);
}

std::vector<Scene> small_corpus() {
  std::vector<Scene> out;
  Scene r;
  r.n = 3;
  r.rectangles = {{2, 5, 2, 5}};
  out.push_back(validate_scene(r));
  Scene rr;
  rr.n = 3;
  rr.rectangles = {{0, 3, 0, 1}, {2, 3, 0, 7}, {6, 8, 6, 8}};
  out.push_back(validate_scene(rr));
  Scene c;
  c.n = 3;
  c.circles = {{4, 4, 3}};
  out.push_back(validate_scene(c));
  Scene p;
  p.n = 3;
  p.polygons = {{{{1, 1}, {6, 1}, {6, 3}, {3, 6}, {1, 4}}}};
  out.push_back(validate_scene(p));
  out.push_back(mixed_scene());
  return out;
}

void expect_matches_brute_force(const Scene& scene) {
  const auto L = plan_oracle_layout(scene);
  const auto oracle = feasibility_phase_oracle(scene, L);
  const auto m = marked_points(oracle, L);
  EXPECT_LT(m.amplitude_error, 1e-9);
  EXPECT_LT(m.work_leakage, 1e-9);
  const auto side = scene.side();
  for (std::int64_t y = 0; y < side; ++y)
    for (std::int64_t x = 0; x < side; ++x) {
      bool free = true;
      for (const auto& r : scene.rectangles) free = free && !inside_rect(r, x, y);
      for (const auto& c : scene.circles) free = free && outside_or_on_circle(c, x, y);
      for (const auto& p : scene.polygons) free = free && edges_failing(p.vertices, x, y) > 0;
      EXPECT_EQ(m.marked[static_cast<std::size_t>(y * side + x)], free) << "(" << x << "," << y << ")";
    }
}

}  // namespace

TEST(CounterWidth, Values) {
  EXPECT_EQ(counter_width(0), 0);
  EXPECT_EQ(counter_width(1), 1);
  EXPECT_EQ(counter_width(2), 2);
  EXPECT_EQ(counter_width(3), 2);
  EXPECT_EQ(counter_width(4), 3);
}

TEST(IntervalCheck, Examples) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto aux = L.add("aux", 3, RegisterRole::ancilla);
  auto s = L.add("s", 1, RegisterRole::flag);
  const auto c = interval_check(L.num_qubits(), x, aux, s, 2, 5);
  EXPECT_EQ(get(run_basis(c, put(0, x, 3)).index, s), 1u);
  EXPECT_EQ(get(run_basis(c, put(0, x, 6)).index, s), 0u);
  const auto full = interval_check(L.num_qubits(), x, aux, s, 0, 7);
  for (std::uint64_t v = 0; v < 8; ++v) EXPECT_EQ(get(run_basis(full, put(0, x, v)).index, s), 1u);
}

TEST(IntervalCheck, ExhaustiveWidth3) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto aux = L.add("aux", 3, RegisterRole::ancilla);
  auto s = L.add("s", 1, RegisterRole::flag);
  for (std::int64_t a1 = 0; a1 <= 8; ++a1)
    for (std::int64_t a2 = a1; a2 <= 8; ++a2) {
      const auto c = interval_check(L.num_qubits(), x, aux, s, a1, a2);
      const auto images = qdisc::testing::run_all_inputs(c, x.qubits());
      for (std::int64_t v = 0; v < 8; ++v) {
        const bool want = a1 <= v && v <= a2;
        EXPECT_EQ(images[v], put(put(0, x, v), s, want ? 1 : 0)) << a1 << ".." << a2 << " x=" << v;
      }
    }
}

TEST(IntervalCheck, Errors) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto aux = L.add("aux", 2, RegisterRole::ancilla);
  auto s = L.add("s", 1, RegisterRole::flag);
  EXPECT_THROW(interval_check(L.num_qubits(), x, aux, s, 1, 2), CapacityError);
  qsim::Register aux3{"aux", 2, 3, RegisterRole::ancilla};
  EXPECT_THROW(interval_check(6, x, aux3, s, 1, 2), RegisterConflictError);
  qsim::Register aux_ok{"aux", 3, 3, RegisterRole::ancilla};
  qsim::Register s_ok{"s", 6, 1, RegisterRole::flag};
  EXPECT_THROW(interval_check(7, x, aux_ok, s_ok, 3, 2), DomainError);
}

TEST(IntervalCheck, DirtyAncillaDetected) {
  RegisterLayout L;
  auto x = L.add("x", 3, RegisterRole::coordinate);
  auto aux = L.add("aux", 3, RegisterRole::ancilla);
  auto s = L.add("s", 1, RegisterRole::flag);
  const auto c = interval_check(L.num_qubits(), x, aux, s, 2, 5);
  auto state = qsim::StateVector::basis(L.num_qubits(), put(0, aux, 2));
  EXPECT_THROW(qsim::apply_in_place(state, c, {.verify_clean_inputs = true}), DirtyAncillaError);
}

TEST(RectInclusion, Examples) {
  RectRegs R(3);
  const Rectangle rect{1, 4, 1, 3};
  const auto c = rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, rect);
  EXPECT_EQ(evaluate(c, R.x, R.y, R.s, 2, 2), 1u);
  EXPECT_EQ(evaluate(c, R.x, R.y, R.s, 5, 2), 0u);
  EXPECT_EQ(evaluate(c, R.x, R.y, R.s, 4, 3), 1u);
}

TEST(RectInclusion, ExhaustiveAgainstPredicate) {
  RectRegs R(3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coord(0, 8);
  for (int trial = 0; trial < 6; ++trial) {
    std::int64_t a = coord(rng), b = coord(rng), c = coord(rng), d = coord(rng);
    const Rectangle rect{std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d)};
    const auto circuit = rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, rect);
    const auto got = evaluate_grid(circuit, R.x, R.y, R.s);
    for (std::int64_t y = 0; y < 8; ++y)
      for (std::int64_t x = 0; x < 8; ++x) EXPECT_EQ(got[y * 8 + x], inside_rect(rect, x, y) ? 1u : 0u);
  }
}

TEST(MultiRectInclusion, CountsOverlaps) {
  RectRegs R(3, 6, 2);
  const std::vector<Rectangle> two{{1, 4, 1, 4}, {2, 6, 0, 3}};
  const auto c = multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, two);
  EXPECT_EQ(evaluate(c, R.x, R.y, R.s, 3, 2), 2u);

  const std::vector<Rectangle> three{{0, 1, 0, 1}, {3, 5, 3, 5}, {6, 7, 6, 7}};
  const auto c3 = multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, three);
  EXPECT_EQ(evaluate(c3, R.x, R.y, R.s, 4, 4), 1u);

  const auto none = multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, {});
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(evaluate(none, R.x, R.y, R.s, 4, 4), 0u);
}

TEST(MultiRectInclusion, AdditiveOverRectangles) {
  RectRegs R(3, 6, 2);
  const std::vector<Rectangle> rects{{0, 4, 0, 4}, {2, 7, 3, 6}, {3, 3, 0, 8}};
  const auto all = multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, rects);
  const auto combined = evaluate_grid(all, R.x, R.y, R.s);
  std::vector<std::uint64_t> sum(64, 0);
  for (const auto& r : rects) {
    const auto single = evaluate_grid(multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, std::span(&r, 1)),
                                      R.x, R.y, R.s);
    for (std::size_t z = 0; z < 64; ++z) sum[z] += single[z];
  }
  for (std::int64_t y = 0; y < 8; ++y)
    for (std::int64_t x = 0; x < 8; ++x) {
      std::uint64_t direct = 0;
      for (const auto& r : rects) direct += inside_rect(r, x, y) ? 1 : 0;
      EXPECT_EQ(combined[y * 8 + x], sum[y * 8 + x]);
      EXPECT_EQ(sum[y * 8 + x], direct);
    }
}

TEST(MultiRectInclusion, CounterTooNarrow) {
  RectRegs R(3, 6, 1);
  const std::vector<Rectangle> two{{1, 4, 1, 4}, {2, 6, 0, 3}};
  EXPECT_THROW(multi_rect_inclusion(R.L.num_qubits(), R.x, R.y, R.aux, R.s, two), CapacityError);
}

TEST(CircleExclusion, Examples) {
  const Circle circle{4, 4, 2};
  CircleRegs R(3, circle);
  const auto got = evaluate_grid(circle_exclusion(R.L.num_qubits(), R.x, R.y, R.w, R.s, circle), R.x, R.y, R.s);
  EXPECT_EQ(got[4 * 8 + 7], 1u);
  EXPECT_EQ(got[4 * 8 + 4], 0u);
  EXPECT_EQ(got[4 * 8 + 6], 1u);
}

TEST(CircleExclusion, FootprintIsFiveNPlusOne) {
  for (int n = 2; n <= 5; ++n) {
    const Circle circle{1, 1, 1};
    CircleRegs R(n, circle);
    EXPECT_EQ(R.x.width + R.y.width + R.w.diff.width + R.w.dist.width, 5 * n + 1);
  }
}

TEST(CircleExclusion, ExhaustiveAgainstPredicate) {
  for (const Circle circle : {Circle{3, 5, 3}, Circle{8, 0, 4}, Circle{0, 8, 0}}) {
    CircleRegs R(3, circle);
    const auto c = circle_exclusion(R.L.num_qubits(), R.x, R.y, R.w, R.s, circle);
    const auto got = evaluate_grid(c, R.x, R.y, R.s);
    for (std::int64_t y = 0; y < 8; ++y)
      for (std::int64_t x = 0; x < 8; ++x)
        EXPECT_EQ(got[y * 8 + x], outside_or_on_circle(circle, x, y) ? 1u : 0u)
            << "circle (" << circle.c1 << "," << circle.c2 << "," << circle.r << ") at (" << x << "," << y << ")";
  }
}

TEST(CircleExclusion, RadiusTooLarge) {
  const Circle circle{4, 4, 12};
  CircleRegs R(3, circle);
  EXPECT_THROW(circle_exclusion(R.L.num_qubits(), R.x, R.y, R.w, R.s, circle), CapacityError);
}

TEST(PolygonInclusion, Examples) {
  const ConvexPolygon square{{{1, 1}, {5, 1}, {5, 5}, {1, 5}}};
  PolygonRegs R(3, square);
  const auto c = polygon_inclusion(R.L.num_qubits(), R.x, R.y, R.w, R.g, square);
  EXPECT_EQ(evaluate(c, R.x, R.y, R.g, 3, 3), 0u);
  EXPECT_GT(evaluate(c, R.x, R.y, R.g, 0, 0), 0u);

  const ConvexPolygon tri{{{0, 0}, {6, 1}, {2, 5}}};
  PolygonRegs T(3, tri);
  const auto ct = polygon_inclusion(T.L.num_qubits(), T.x, T.y, T.w, T.g, tri);
  EXPECT_EQ(evaluate(ct, T.x, T.y, T.g, (0 + 6 + 2) / 3, (0 + 1 + 5) / 3), 0u);
}

TEST(PolygonInclusion, ExhaustiveEdgeCounts) {
  const std::vector<ConvexPolygon> polys{
      {{{1, 1}, {5, 1}, {5, 5}, {1, 5}}},
      {{{0, 0}, {8, 0}, {0, 8}}},
      {{{3, 0}, {7, 4}, {4, 7}, {0, 3}}},
  };
  for (const auto& poly : polys) {
    PolygonRegs R(3, poly);
    const auto c = polygon_inclusion(R.L.num_qubits(), R.x, R.y, R.w, R.g, poly);
    const auto got = evaluate_grid(c, R.x, R.y, R.g);
    for (std::int64_t y = 0; y < 8; ++y)
      for (std::int64_t x = 0; x < 8; ++x)
        EXPECT_EQ(got[y * 8 + x], static_cast<std::uint64_t>(edges_failing(poly.vertices, x, y)))
            << "(" << x << "," << y << ")";
  }
}

TEST(PolygonInclusion, InsideRegionIsConvexAlongSegments) {
  const ConvexPolygon poly{{{2, 0}, {7, 2}, {6, 6}, {1, 5}}};
  PolygonRegs R(3, poly);
  const auto c = polygon_inclusion(R.L.num_qubits(), R.x, R.y, R.w, R.g, poly);
  const auto got = evaluate_grid(c, R.x, R.y, R.g);
  bool inside[8][8];
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) inside[y][x] = got[y * 8 + x] == 0;
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  int segments = 0;
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      if (!inside[y][x]) continue;
      for (const auto& d : dirs)
        for (int k = 2; k < 8; ++k) {
          const int ex = x + k * d[0], ey = y + k * d[1];
          if (ex < 0 || ex >= 8 || ey < 0 || ey >= 8 || !inside[ey][ex]) continue;
          ++segments;
          for (int t = 1; t < k; ++t) EXPECT_TRUE(inside[y + t * d[1]][x + t * d[0]]);
        }
    }
  EXPECT_GT(segments, 0);
}

TEST(SceneValidation, ReversesClockwisePolygon) {
  Scene s;
  s.n = 3;
  s.polygons = {{{{1, 1}, {1, 5}, {5, 5}, {5, 1}}}};
  const auto v = validate_scene(s);
  EXPECT_GT(signed_area2(v.polygons[0]), 0);
  for (std::int64_t y = 0; y < 8; ++y)
    for (std::int64_t x = 0; x < 8; ++x)
      EXPECT_EQ(blocks(v.polygons[0], {x, y}), x >= 1 && x <= 5 && y >= 1 && y <= 5);
}

TEST(SceneValidation, RejectsNonConvexNamingVertex) {
  Scene s;
  s.n = 3;
  s.polygons = {{{{0, 0}, {6, 0}, {3, 2}, {6, 6}, {0, 6}}}};
  try {
    validate_scene(s);
    FAIL() << "accepted a non-convex polygon";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 2"), std::string::npos) << e.what();
  }
}

TEST(SceneValidation, RejectsBadBoxesAndEmptyScenes) {
  Scene s;
  s.n = 3;
  s.rectangles = {{4, 1, 0, 2}};
  EXPECT_THROW(validate_scene(s), ValidationError);
  s.rectangles = {{0, 9, 0, 2}};
  EXPECT_THROW(validate_scene(s), ValidationError);
  s.rectangles = {{0, 8, 0, 8}};
  EXPECT_THROW(validate_scene(s), EmptyFeasibleRegionError);
  EXPECT_NO_THROW(validate_scene(s, false));
  s.rectangles.clear();
  s.circles = {{4, 4, 12}};
  EXPECT_THROW(validate_scene(s), ValidationError);
}

TEST(FeasibilityOracle, NoObstaclesIsGlobalPhase) {
  Scene s;
  s.n = 3;
  const auto L = plan_oracle_layout(s);
  const auto m = marked_points(feasibility_phase_oracle(s, L), L);
  for (bool b : m.marked) EXPECT_TRUE(b);
  EXPECT_LT(m.amplitude_error, 1e-12);
}

TEST(FeasibilityOracle, FullCoverMarksNothing) {
  Scene s;
  s.n = 3;
  s.rectangles = {{0, 8, 0, 8}};
  s = validate_scene(s, false);
  const auto L = plan_oracle_layout(s);
  const auto m = marked_points(feasibility_phase_oracle(s, L), L);
  for (bool b : m.marked) EXPECT_FALSE(b);
  EXPECT_LT(m.work_leakage, 1e-9);
}

TEST(FeasibilityOracle, MatchesBruteForceOnSmallCorpus) {
  for (const auto& scene : small_corpus()) expect_matches_brute_force(scene);
}

TEST(FeasibilityOracle, SelfInverse) {
  Scene small;
  small.n = 2;
  small.rectangles = {{0, 0, 3, 4}};
  small.circles = {{4, 0, 2}};
  small.polygons = {{{{1, 1}, {3, 2}, {1, 3}}}};
  const auto scene = validate_scene(small);
  const auto L = plan_oracle_layout(scene);
  const auto oracle = feasibility_phase_oracle(scene, L);
  std::mt19937_64 rng(17);
  // Random state on the coordinates with the work qubits clean.
  std::vector<qsim::Amplitude> amps(std::size_t{1} << L.num_qubits);
  std::normal_distribution<double> g;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * L.n)); ++i) amps[i] = {g(rng), g(rng)};
  auto in = qsim::StateVector::from_amplitudes(std::move(amps));
  in.normalize();
  auto twice = qsim::apply_circuit(qsim::apply_circuit(in, oracle), oracle);
  EXPECT_GT(twice.fidelity(in), 1.0 - 1e-10);
}

TEST(FeasibilityOracle, LayoutReportsCapacity) {
  Scene s;
  s.n = 8;
  s.circles = {{100, 100, 10}};
  try {
    plan_oracle_layout(s);
    FAIL() << "expected a capacity error";
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("qubits"), std::string::npos);
  }
}
