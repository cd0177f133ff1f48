#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdisc/geo/scene.hpp"
#include "qdisc/qsim/circuit.hpp"
#include "qdisc/qsim/register.hpp"

namespace qdisc::geo {

using qsim::Circuit;
using qsim::Register;

// ceil(log2(count + 1)): bits for a counter that reaches `count`.
int counter_width(std::size_t count);

// s ^= [a1 <= x <= a2]. `aux` holds three qubits used in this order: the
// low-bound flag [x < a1], the high-bound flag [x < a2 + 1] and the shared
// comparison scratch. All three return to |0>.
Circuit interval_check(int num_qubits, const Register& x, const Register& aux, const Register& s, std::int64_t a1,
                       std::int64_t a2);

// s ^= [z in rect]. `aux` holds five qubits: the x and y interval flags
// followed by the three interval-check ancillas.
Circuit rect_inclusion(int num_qubits, const Register& x, const Register& y, const Register& aux, const Register& s,
                       const Rectangle& rect);

// count += number of rectangles containing z. `aux` holds six qubits: the
// five rectangle ancillas and the per-rectangle flag.
Circuit multi_rect_inclusion(int num_qubits, const Register& x, const Register& y, const Register& aux,
                             const Register& count, std::span<const Rectangle> rects);

// Scratch for one circle test. `diff` is shared by both axes.
struct CircleWork {
  Register diff;
  Register dist;
  Register alpha;
  Register extension;
};

// Widths the circle test needs on an n-bit grid: n for the difference, one
// more when a centre coordinate sits on the far edge 2^n.
int circle_diff_width(int n, const Circle& circle);
int circle_dist_width(int n, const Circle& circle);

// s ^= [(x - c1)^2 + (y - c2)^2 >= r^2]: set outside the disc and on its rim.
Circuit circle_exclusion(int num_qubits, const Register& x, const Register& y, const CircleWork& work,
                         const Register& s, const Circle& circle);

// Scratch for one polygon test: sign extensions for the shifted coordinates
// and the two's-complement cross-product accumulator.
struct PolygonWork {
  Register x_ext;
  Register y_ext;
  Register cross;
};

int polygon_extension_width(int n, const ConvexPolygon& poly);
int polygon_cross_width(int n, const ConvexPolygon& poly);

// g_acc += number of edges with z strictly on their right (outside). g_acc
// stays 0 exactly for interior and boundary points.
Circuit polygon_inclusion(int num_qubits, const Register& x, const Register& y, const PolygonWork& work,
                          const Register& g_acc, const ConvexPolygon& poly);

// Qubit plan for the phase oracle of one scene. Every obstacle test borrows
// the shared `pool`; `counter` accumulates the number of obstacles hit.
struct OracleLayout {
  int n = 0;
  Register x, y;
  Register pool;
  Register counter;
  int num_qubits = 0;

  std::string describe() const;
};

// Qubits each kind of sub-test needs from the pool.
int rect_pool_width(const Scene& scene);
int circle_pool_width(int n, const Circle& circle);
int polygon_pool_width(int n, const ConvexPolygon& poly);

// Throws CapacityError, with the per-register breakdown, above the simulator
// limit.
OracleLayout plan_oracle_layout(const Scene& scene);

// Phase -1 on exactly the feasible |x>|y>; all other qubits return to |0>.
Circuit feasibility_phase_oracle(const Scene& scene, const OracleLayout& layout);

// Inversion about the mean on the coordinate qubits.
Circuit diffusion(const OracleLayout& layout);

// Result of running a phase oracle once on the uniform superposition of
// grid points.
struct MarkedSet {
  // Indexed y * 2^n + x.
  std::vector<bool> marked;
  // Largest deviation of any coordinate amplitude from +-2^-n.
  double amplitude_error = 0.0;
  // Weight left outside the all-work-zero subspace.
  double work_leakage = 0.0;
};

MarkedSet marked_points(const Circuit& oracle, const OracleLayout& layout);

}  // namespace qdisc::geo
