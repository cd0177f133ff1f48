#include "qdisc/geo/scene.hpp"

#include <algorithm>
#include <string>

#include "qdisc/errors.hpp"

namespace qdisc::geo {

namespace {

std::string point_str(GridPoint p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

void check_coord(std::int64_t v, std::int64_t side, const std::string& what) {
  if (v < 0 || v > side)
    throw ValidationError(what + " = " + std::to_string(v) + " lies outside [0, " + std::to_string(side) + "]");
}

}  // namespace

GridPoint ConvexPolygon::edge(std::size_t i) const {
  const auto& a = vertices[i];
  const auto& b = vertices[(i + 1) % vertices.size()];
  return {b.x - a.x, b.y - a.y};
}

std::int64_t cross(GridPoint a, GridPoint b) { return a.x * b.y - a.y * b.x; }

std::int64_t signed_area2(const ConvexPolygon& poly) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly.vertices[i], poly.vertices[(i + 1) % poly.size()]);
  return s;
}

Scene validate_scene(Scene scene, bool require_feasible) {
  if (scene.n < 1 || scene.n > kMaxSceneBits)
    throw CapacityError("grid bits n = " + std::to_string(scene.n) + " outside [1, " + std::to_string(kMaxSceneBits) +
                        "]");
  const std::int64_t side = scene.side();

  for (std::size_t i = 0; i < scene.rectangles.size(); ++i) {
    const auto& r = scene.rectangles[i];
    const std::string tag = "rectangles[" + std::to_string(i) + "]";
    check_coord(r.a1, side, tag + ".a1");
    check_coord(r.a2, side, tag + ".a2");
    check_coord(r.b1, side, tag + ".b1");
    check_coord(r.b2, side, tag + ".b2");
    if (r.a1 > r.a2) throw ValidationError(tag + ": a1 > a2");
    if (r.b1 > r.b2) throw ValidationError(tag + ": b1 > b2");
  }

  for (std::size_t i = 0; i < scene.circles.size(); ++i) {
    const auto& c = scene.circles[i];
    const std::string tag = "circles[" + std::to_string(i) + "]";
    check_coord(c.c1, side, tag + ".c1");
    check_coord(c.c2, side, tag + ".c2");
    if (c.r < 0) throw ValidationError(tag + ": negative radius");
    if (c.r * c.r >= (std::int64_t{1} << (2 * scene.n + 1)))
      throw ValidationError(tag + ": r^2 = " + std::to_string(c.r * c.r) + " does not fit a " +
                            std::to_string(2 * scene.n + 1) + "-bit distance register");
  }

  for (std::size_t i = 0; i < scene.polygons.size(); ++i) {
    auto& p = scene.polygons[i];
    const std::string tag = "polygons[" + std::to_string(i) + "]";
    if (p.size() < 3) throw ValidationError(tag + ": needs at least 3 vertices, got " + std::to_string(p.size()));
    for (std::size_t v = 0; v < p.size(); ++v) {
      check_coord(p.vertices[v].x, side, tag + ".vertices[" + std::to_string(v) + "].x");
      check_coord(p.vertices[v].y, side, tag + ".vertices[" + std::to_string(v) + "].y");
    }
    const std::int64_t area = signed_area2(p);
    if (area == 0) throw ValidationError(tag + ": degenerate polygon with zero area");
    const bool reversed = area < 0;
    if (reversed) std::reverse(p.vertices.begin(), p.vertices.end());
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (cross(p.edge(v), p.edge((v + 1) % p.size())) <= 0) {
        // Name the vertex where the turn fails, indexed as the caller wrote it.
        const std::size_t at = (v + 1) % p.size();
        const std::size_t original = reversed ? p.size() - 1 - at : at;
        throw ValidationError(tag + ": not strictly convex at vertex " + std::to_string(original) + " " +
                              point_str(p.vertices[at]));
      }
    }
  }

  if (require_feasible && scene.n <= kMaxEnumerableBits && feasible_points(scene).empty())
    throw EmptyFeasibleRegionError("scene has no feasible grid point");
  return scene;
}

bool blocks(const Rectangle& r, GridPoint z) { return r.a1 <= z.x && z.x <= r.a2 && r.b1 <= z.y && z.y <= r.b2; }

bool blocks(const Circle& c, GridPoint z) {
  const std::int64_t dx = z.x - c.c1;
  const std::int64_t dy = z.y - c.c2;
  return dx * dx + dy * dy < c.r * c.r;
}

bool blocks(const ConvexPolygon& p, GridPoint z) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const GridPoint d{z.x - p.vertices[i].x, z.y - p.vertices[i].y};
    if (cross(p.edge(i), d) < 0) return false;
  }
  return true;
}

bool is_feasible(const Scene& scene, GridPoint z) {
  if (z.x < 0 || z.y < 0 || z.x >= scene.side() || z.y >= scene.side()) return false;
  for (const auto& r : scene.rectangles)
    if (blocks(r, z)) return false;
  for (const auto& c : scene.circles)
    if (blocks(c, z)) return false;
  for (const auto& p : scene.polygons)
    if (blocks(p, z)) return false;
  return true;
}

std::vector<GridPoint> feasible_points(const Scene& scene) {
  if (scene.n > kMaxEnumerableBits)
    throw CapacityError("exhaustive enumeration limited to n <= " + std::to_string(kMaxEnumerableBits));
  std::vector<GridPoint> out;
  for (std::int64_t y = 0; y < scene.side(); ++y)
    for (std::int64_t x = 0; x < scene.side(); ++x)
      if (is_feasible(scene, {x, y})) out.push_back({x, y});
  return out;
}

}  // namespace qdisc::geo
