#pragma once

#include <cstdint>
#include <vector>

namespace qdisc::geo {

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const GridPoint&) const = default;
  auto operator<=>(const GridPoint&) const = default;
};

// Closed box [a1, a2] x [b1, b2]; boundary points belong to the obstacle.
struct Rectangle {
  std::int64_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  bool operator==(const Rectangle&) const = default;
};

// Open disc: points with squared distance below r^2 are blocked, the rim is free.
struct Circle {
  std::int64_t c1 = 0, c2 = 0, r = 0;
  bool operator==(const Circle&) const = default;
};

// Strictly convex, counter-clockwise after validation. Boundary points are
// blocked.
struct ConvexPolygon {
  std::vector<GridPoint> vertices;

  std::size_t size() const { return vertices.size(); }
  // v_i = p_{i+1} - p_i, wrapping.
  GridPoint edge(std::size_t i) const;
  bool operator==(const ConvexPolygon&) const = default;
};

struct Scene {
  int n = 1;
  std::vector<Rectangle> rectangles;
  std::vector<Circle> circles;
  std::vector<ConvexPolygon> polygons;

  std::int64_t side() const { return std::int64_t{1} << n; }
  std::size_t num_obstacles() const { return rectangles.size() + circles.size() + polygons.size(); }
  bool operator==(const Scene&) const = default;
};

// Largest n for which the grid may be enumerated exhaustively.
inline constexpr int kMaxEnumerableBits = 12;
// Largest n a scene may declare at all.
inline constexpr int kMaxSceneBits = 16;

// z x w = z.x w.y - z.y w.x.
std::int64_t cross(GridPoint a, GridPoint b);
// Twice the signed area; positive for counter-clockwise order.
std::int64_t signed_area2(const ConvexPolygon& poly);

// Checks every obstacle invariant, reorders clockwise polygons to
// counter-clockwise and, when `require_feasible` is set and n is small enough
// to enumerate, rejects scenes without a feasible grid point.
// Throws ValidationError, CapacityError or EmptyFeasibleRegionError.
Scene validate_scene(Scene scene, bool require_feasible = true);

bool blocks(const Rectangle& r, GridPoint z);
bool blocks(const Circle& c, GridPoint z);
bool blocks(const ConvexPolygon& p, GridPoint z);

// Inside [0, 2^n)^2 and outside every obstacle.
bool is_feasible(const Scene& scene, GridPoint z);

// Every feasible grid point in row-major order (y outer, x inner). Throws
// CapacityError above kMaxEnumerableBits.
std::vector<GridPoint> feasible_points(const Scene& scene);

}  // namespace qdisc::geo
