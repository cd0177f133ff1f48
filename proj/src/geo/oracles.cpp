#include "qdisc/geo/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <vector>

#include "qdisc/arith/emit.hpp"
#include "qdisc/arith/operators.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/qsim/state_vector.hpp"

namespace qdisc::geo {

namespace {

using arith::Qubits;
using qsim::Control;
using qsim::Gate;
using qsim::QubitList;

Register slice(const Register& r, int offset, int width, const std::string& name) {
  if (offset + width > r.width)
    throw CapacityError("register '" + r.name + "' too narrow for '" + name + "' (" +
                        std::to_string(offset + width) + " > " + std::to_string(r.width) + ")");
  return {name, r.offset + offset, width, qsim::RegisterRole::ancilla};
}

void disjoint(std::initializer_list<const Register*> regs) {
  std::vector<Register> list;
  for (const auto* r : regs) list.push_back(*r);
  qsim::require_disjoint(list);
}

void require_width(const Register& r, int width, const char* what) {
  if (r.width < width)
    throw CapacityError(std::string(what) + " needs " + std::to_string(width) + " qubits, register '" + r.name +
                        "' has " + std::to_string(r.width));
}

// Adds 1 to `count` when every control fires.
void emit_increment(Circuit& c, const Register& count, std::span<const Control> controls) {
  arith::emit_add_const(c, count.qubits(), 1, controls);
}

// s ^= [a1 <= x <= a2]. One running offset on (x, scratch) exposes
// [x < a1] and then [x < a2 + 1] in the scratch qubit; each is copied out
// before the offset moves on.
void emit_interval(Circuit& c, Qubits x, int lo, int hi, int scratch, int s, std::int64_t a1, std::int64_t a2) {
  if (a1 < 0 || a1 > a2) throw DomainError("interval needs 0 <= a1 <= a2");
  const std::int64_t side = std::int64_t{1} << x.size();
  if (a2 > side) throw DomainError("interval bound " + std::to_string(a2) + " beyond 2^" + std::to_string(x.size()));
  QubitList joint(x.begin(), x.end());
  joint.push_back(scratch);

  Circuit bounds(c.num_qubits());
  std::int64_t offset = 0;
  if (a1 > 0) {
    arith::emit_add_const(bounds, joint, -a1);
    bounds.add(Gate::cx(scratch, lo));
    offset = -a1;
  }
  if (a2 + 1 > side) {
    bounds.add(Gate::x(hi));
  } else {
    arith::emit_add_const(bounds, joint, -(a2 + 1) - offset);
    bounds.add(Gate::cx(scratch, hi));
    offset = -(a2 + 1);
  }
  arith::emit_add_const(bounds, joint, -offset);

  c.append(bounds);
  c.add(Gate::x(s).with_control(lo, false).with_control(hi, true));
  c.append(bounds.inverse());
}

void emit_rect(Circuit& c, const Register& x, const Register& y, const Register& aux, int s, const Rectangle& r) {
  const int s1 = aux.qubit(0), s2 = aux.qubit(1), lo = aux.qubit(2), hi = aux.qubit(3), scratch = aux.qubit(4);
  Circuit both(c.num_qubits());
  emit_interval(both, x.qubits(), lo, hi, scratch, s1, r.a1, r.a2);
  emit_interval(both, y.qubits(), lo, hi, scratch, s2, r.b1, r.b2);
  c.append(both);
  c.add(Gate::x(s).with_control(s1).with_control(s2));
  c.append(both.inverse());
}

// Leaves dist = d^2 and s = [d^2 >= r^2]; the inverse clears both.
Circuit circle_compute(int num_qubits, const Register& x, const Register& y, const CircleWork& w, int s,
                       const Circle& circle) {
  arith::DistanceRegisters regs{x, y, w.diff, w.diff, w.dist, w.alpha, w.extension};
  Circuit c = arith::euclid_sq_dist(num_qubits, regs, static_cast<std::uint64_t>(circle.c1),
                                    static_cast<std::uint64_t>(circle.c2));
  arith::emit_less_than(c, w.dist.qubits(), w.extension.qubit(0), s, static_cast<std::uint64_t>(circle.r * circle.r));
  c.add(Gate::x(s));
  return c;
}

void emit_circle(Circuit& c, const Register& x, const Register& y, const CircleWork& w, int s, const Circle& circle) {
  const Circuit ed = arith::euclid_sq_dist(c.num_qubits(), {x, y, w.diff, w.diff, w.dist, w.alpha, w.extension},
                                           static_cast<std::uint64_t>(circle.c1),
                                           static_cast<std::uint64_t>(circle.c2));
  c.append(ed);
  arith::emit_less_than(c, w.dist.qubits(), w.extension.qubit(0), s, static_cast<std::uint64_t>(circle.r * circle.r));
  c.add(Gate::x(s));
  c.append(ed.inverse());
}

void emit_polygon(Circuit& c, const Register& x, const Register& y, const PolygonWork& w, const Register& g_acc,
                  const ConvexPolygon& poly) {
  QubitList jx = x.qubits(), jy = y.qubits();
  for (int q : w.x_ext.qubits()) jx.push_back(q);
  for (int q : w.y_ext.qubits()) jy.push_back(q);
  const int sx = jx.back(), sy = jy.back();
  const Qubits mx(jx.data(), jx.size() - 1), my(jy.data(), jy.size() - 1);
  const Control sx_on{sx, true}, sy_on{sy, true};
  const auto cross = w.cross.qubits();

  for (std::size_t i = 0; i < poly.size(); ++i) {
    const GridPoint p = poly.vertices[i];
    const GridPoint e = poly.edge(i);
    Circuit edge(c.num_qubits());
    // z - p in two's complement over the extended registers ...
    arith::emit_add_const(edge, jx, -p.x);
    arith::emit_add_const(edge, jy, -p.y);
    // ... then sign-magnitude, sign in the top qubit ...
    arith::emit_twos_negate(edge, mx, {&sx_on, 1});
    arith::emit_twos_negate(edge, my, {&sy_on, 1});
    // ... then e x (z - p) = d.x (-e.y) - d.y (-e.x).
    arith::emit_cross_product(edge, sx, mx, sy, my, cross, -e.x, -e.y);
    c.append(edge);
    const Control negative{cross.back(), true};
    emit_increment(c, g_acc, {&negative, 1});
    c.append(edge.inverse());
  }
}

Circuit global_minus_one(int num_qubits, int q) {
  Circuit c(num_qubits);
  c.add(Gate::z(q)).add(Gate::x(q)).add(Gate::z(q)).add(Gate::x(q));
  return c;
}

}  // namespace

int counter_width(std::size_t count) { return static_cast<int>(std::bit_width(count)); }

Circuit interval_check(int num_qubits, const Register& x, const Register& aux, const Register& s, std::int64_t a1,
                       std::int64_t a2) {
  require_width(aux, 3, "interval check ancillas");
  require_width(s, 1, "interval check result");
  disjoint({&x, &aux, &s});
  Circuit c(num_qubits);
  c.require_clean(aux);
  c.require_clean(s);
  emit_interval(c, x.qubits(), aux.qubit(0), aux.qubit(1), aux.qubit(2), s.qubit(0), a1, a2);
  return c;
}

Circuit rect_inclusion(int num_qubits, const Register& x, const Register& y, const Register& aux, const Register& s,
                       const Rectangle& rect) {
  require_width(aux, 5, "rectangle ancillas");
  require_width(s, 1, "rectangle result");
  disjoint({&x, &y, &aux, &s});
  Circuit c(num_qubits);
  c.require_clean(aux);
  c.require_clean(s);
  emit_rect(c, x, y, aux, s.qubit(0), rect);
  return c;
}

Circuit multi_rect_inclusion(int num_qubits, const Register& x, const Register& y, const Register& aux,
                             const Register& count, std::span<const Rectangle> rects) {
  Circuit c(num_qubits);
  if (rects.empty()) return c;
  require_width(aux, 6, "multi-rectangle ancillas");
  require_width(count, counter_width(rects.size()), "rectangle counter");
  disjoint({&x, &y, &aux, &count});
  c.require_clean(aux);
  const int flag = aux.qubit(5);
  const Control on{flag, true};
  for (const auto& r : rects) {
    Circuit rio(num_qubits);
    emit_rect(rio, x, y, aux, flag, r);
    c.append(rio);
    emit_increment(c, count, {&on, 1});
    c.append(rio.inverse());
  }
  return c;
}

int circle_diff_width(int n, const Circle& circle) {
  const std::int64_t side = std::int64_t{1} << n;
  return (circle.c1 >= side || circle.c2 >= side) ? n + 1 : n;
}

int circle_dist_width(int n, const Circle& circle) { return 2 * circle_diff_width(n, circle) + 1; }

Circuit circle_exclusion(int num_qubits, const Register& x, const Register& y, const CircleWork& work,
                         const Register& s, const Circle& circle) {
  const int n = x.width;
  require_width(work.diff, circle_diff_width(n, circle), "circle difference");
  require_width(work.dist, circle_dist_width(n, circle), "circle distance");
  require_width(work.alpha, 1, "circle alpha");
  require_width(work.extension, 1, "circle extension");
  require_width(s, 1, "circle result");
  if (circle.r < 0 || static_cast<std::uint64_t>(circle.r * circle.r) > (std::uint64_t{1} << work.dist.width))
    throw CapacityError("r^2 exceeds the distance register");
  disjoint({&x, &y, &work.diff, &work.dist, &work.alpha, &work.extension, &s});
  Circuit c(num_qubits);
  for (const auto* r : {&work.diff, &work.dist, &work.alpha, &work.extension, &s}) c.require_clean(*r);
  emit_circle(c, x, y, work, s.qubit(0), circle);
  return c;
}

int polygon_extension_width(int n, const ConvexPolygon& poly) {
  const std::int64_t side = std::int64_t{1} << n;
  for (const auto& v : poly.vertices)
    if (v.x >= side || v.y >= side) return 2;
  return 1;
}

int polygon_cross_width(int n, const ConvexPolygon& poly) {
  const int magnitude_bits = n + polygon_extension_width(n, poly) - 1;
  int w = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto e = poly.edge(i);
    w = std::max(w, arith::cross_product_width(magnitude_bits, -e.x, -e.y));
  }
  return w;
}

Circuit polygon_inclusion(int num_qubits, const Register& x, const Register& y, const PolygonWork& work,
                          const Register& g_acc, const ConvexPolygon& poly) {
  const int n = x.width;
  if (y.width != n) throw ShapeError("polygon test needs equal coordinate widths");
  const int ext = polygon_extension_width(n, poly);
  require_width(work.x_ext, ext, "polygon x extension");
  require_width(work.y_ext, ext, "polygon y extension");
  require_width(work.cross, polygon_cross_width(n, poly), "polygon cross product");
  require_width(g_acc, counter_width(poly.size()), "polygon edge counter");
  if (work.x_ext.width != ext || work.y_ext.width != ext)
    throw ShapeError("polygon extensions must be exactly " + std::to_string(ext) + " qubits");
  disjoint({&x, &y, &work.x_ext, &work.y_ext, &work.cross, &g_acc});
  Circuit c(num_qubits);
  for (const auto* r : {&work.x_ext, &work.y_ext, &work.cross, &g_acc}) c.require_clean(*r);
  emit_polygon(c, x, y, work, g_acc, poly);
  return c;
}

int rect_pool_width(const Scene& scene) { return scene.rectangles.empty() ? 0 : 6; }

int circle_pool_width(int n, const Circle& circle) { return circle_diff_width(n, circle) + circle_dist_width(n, circle) + 3; }

int polygon_pool_width(int n, const ConvexPolygon& poly) {
  return 2 * polygon_extension_width(n, poly) + polygon_cross_width(n, poly) + counter_width(poly.size());
}

std::string OracleLayout::describe() const {
  std::ostringstream os;
  os << "x " << x.width << " + y " << y.width << " + work " << pool.width << " + counter " << counter.width << " = "
     << num_qubits << " qubits";
  return os.str();
}

OracleLayout plan_oracle_layout(const Scene& scene) {
  const int n = scene.n;
  int pool = rect_pool_width(scene);
  for (const auto& c : scene.circles) pool = std::max(pool, circle_pool_width(n, c));
  for (const auto& p : scene.polygons) pool = std::max(pool, polygon_pool_width(n, p));

  OracleLayout L;
  L.n = n;
  qsim::RegisterLayout alloc;
  L.x = alloc.add("x", n, qsim::RegisterRole::coordinate);
  L.y = alloc.add("y", n, qsim::RegisterRole::coordinate);
  L.pool = alloc.add("work", pool, qsim::RegisterRole::ancilla);
  L.counter = alloc.add("counter", counter_width(scene.num_obstacles()), qsim::RegisterRole::accumulator);
  L.num_qubits = alloc.num_qubits();
  if (L.num_qubits > qsim::kMaxQubits)
    throw CapacityError("feasibility oracle needs " + L.describe() + ", above the " +
                        std::to_string(qsim::kMaxQubits) + "-qubit limit");
  return L;
}

Circuit feasibility_phase_oracle(const Scene& scene, const OracleLayout& L) {
  const int nq = L.num_qubits;
  if (scene.num_obstacles() == 0) return global_minus_one(nq, L.x.qubit(0));
  require_width(L.counter, counter_width(scene.num_obstacles()), "obstacle counter");

  // Each obstacle contributes (compute, count, uncompute). Only the counter
  // survives, so the last obstacle's uncompute can wait until after the kick.
  struct Segment {
    Circuit compute, count;
  };
  std::vector<Segment> segments;
  if (!scene.rectangles.empty()) {
    Segment s{Circuit(nq), Circuit(nq)};
    s.count = multi_rect_inclusion(nq, L.x, L.y, slice(L.pool, 0, 6, "rect_aux"), L.counter, scene.rectangles);
    segments.push_back(std::move(s));
  }
  for (const auto& circle : scene.circles) {
    const int d = circle_diff_width(L.n, circle);
    CircleWork w{slice(L.pool, 0, d, "diff"), slice(L.pool, d, 2 * d + 1, "dist"), slice(L.pool, 3 * d + 1, 1, "alpha"),
                 slice(L.pool, 3 * d + 2, 1, "ext")};
    const Register s = slice(L.pool, 3 * d + 3, 1, "s");
    // Validates the widths; the segment itself keeps dist live until uncompute.
    (void)circle_exclusion(nq, L.x, L.y, w, s, circle);
    Segment seg{circle_compute(nq, L.x, L.y, w, s.qubit(0), circle), Circuit(nq)};
    const Control inside{s.qubit(0), false};
    emit_increment(seg.count, L.counter, {&inside, 1});
    segments.push_back(std::move(seg));
  }
  for (const auto& poly : scene.polygons) {
    const int e = polygon_extension_width(L.n, poly);
    const int w = polygon_cross_width(L.n, poly);
    PolygonWork work{slice(L.pool, 0, e, "x_ext"), slice(L.pool, e, e, "y_ext"), slice(L.pool, 2 * e, w, "cross")};
    const Register g = slice(L.pool, 2 * e + w, counter_width(poly.size()), "g_acc");
    Segment seg{polygon_inclusion(nq, L.x, L.y, work, g, poly), Circuit(nq)};
    std::vector<Control> all_zero;
    for (int q : g.qubits()) all_zero.push_back({q, false});
    emit_increment(seg.count, L.counter, all_zero);
    segments.push_back(std::move(seg));
  }

  // The last segment is never uncomputed inside `mark`, so put the most
  // expensive one there.
  const auto costliest = std::max_element(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    return a.compute.size() < b.compute.size();
  });
  std::rotate(costliest, costliest + 1, segments.end());

  Circuit mark(nq);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    mark.append(segments[i].compute);
    mark.append(segments[i].count);
    if (i + 1 < segments.size()) mark.append(segments[i].compute.inverse());
  }

  Circuit c(nq);
  c.require_clean(L.pool);
  c.require_clean(L.counter);
  c.append(mark);
  // Phase -1 exactly when the counter reads zero.
  const int c0 = L.counter.qubit(0);
  Gate z = Gate::z(c0);
  for (int b = 1; b < L.counter.width; ++b) z = z.with_control(L.counter.qubit(b), false);
  c.add(Gate::x(c0)).add(z).add(Gate::x(c0));
  c.append(mark.inverse());
  return c;
}

Circuit diffusion(const OracleLayout& L) {
  Circuit c(L.num_qubits);
  QubitList coords = L.x.qubits();
  for (int q : L.y.qubits()) coords.push_back(q);
  for (int q : coords) c.add(Gate::h(q));
  for (int q : coords) c.add(Gate::x(q));
  Gate z = Gate::z(coords[0]);
  for (std::size_t i = 1; i < coords.size(); ++i) z = z.with_control(coords[i]);
  c.add(z);
  for (int q : coords) c.add(Gate::x(q));
  for (int q : coords) c.add(Gate::h(q));
  return c;
}

MarkedSet marked_points(const Circuit& oracle, const OracleLayout& L) {
  qsim::StateVector state(L.num_qubits);
  Circuit prep(L.num_qubits);
  for (int q : L.x.qubits()) prep.add(Gate::h(q));
  for (int q : L.y.qubits()) prep.add(Gate::h(q));
  prep.append(oracle);
  qsim::apply_in_place(state, prep);

  const std::uint64_t side = std::uint64_t{1} << L.n;
  const double expected = 1.0 / static_cast<double>(side);
  MarkedSet out;
  out.marked.resize(side * side);
  double kept = 0.0;
  for (std::uint64_t y = 0; y < side; ++y)
    for (std::uint64_t x = 0; x < side; ++x) {
      const auto index = qsim::encode_int(qsim::encode_int(0, L.x, x), L.y, y);
      const auto a = state[index];
      const bool negative = a.real() < 0;
      out.marked[y * side + x] = negative;
      out.amplitude_error = std::max(out.amplitude_error, std::abs(a - qsim::Amplitude(negative ? -expected : expected)));
      kept += std::norm(a);
    }
  out.work_leakage = std::max(0.0, 1.0 - kept);
  return out;
}

}  // namespace qdisc::geo
