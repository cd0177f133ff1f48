#include "qdisc/cli/scene_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdisc/errors.hpp"

namespace qdisc::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view origin, const std::string& where, const std::string& what) {
  throw ParseError(std::string(origin) + ": " + where + ": " + what);
}

std::int64_t integer(std::string_view origin, const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(origin, where, "expected an integer, got " + std::string(v.type_name()));
  return v.get<std::int64_t>();
}

const json& array_of(std::string_view origin, const json& v, const std::string& where, std::size_t size = 0) {
  if (!v.is_array()) fail(origin, where, "expected an array, got " + std::string(v.type_name()));
  if (size != 0 && v.size() != size)
    fail(origin, where, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  return v;
}

}  // namespace

geo::Scene parse_scene(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "schema_version" && key != "n" && key != "rectangles" && key != "circles" && key != "polygons")
      fail(origin, key, "unknown field");
  }
  if (!doc.contains("schema_version")) fail(origin, "schema_version", "missing");
  if (const auto v = integer(origin, doc["schema_version"], "schema_version"); v != kSceneSchemaVersion)
    fail(origin, "schema_version", "unsupported version " + std::to_string(v));
  if (!doc.contains("n")) fail(origin, "n", "missing");

  geo::Scene scene;
  const auto n = integer(origin, doc["n"], "n");
  if (n < 1 || n > geo::kMaxSceneBits)
    throw CapacityError(std::string(origin) + ": n = " + std::to_string(n) + " outside [1, " +
                        std::to_string(geo::kMaxSceneBits) + "]");
  scene.n = static_cast<int>(n);

  if (doc.contains("rectangles")) {
    const auto& list = array_of(origin, doc["rectangles"], "rectangles");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "rectangles[" + std::to_string(i) + "]";
      const auto& r = array_of(origin, list[i], at, 4);
      scene.rectangles.push_back({integer(origin, r[0], at + "[0]"), integer(origin, r[1], at + "[1]"),
                                  integer(origin, r[2], at + "[2]"), integer(origin, r[3], at + "[3]")});
    }
  }
  if (doc.contains("circles")) {
    const auto& list = array_of(origin, doc["circles"], "circles");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "circles[" + std::to_string(i) + "]";
      const auto& c = array_of(origin, list[i], at, 3);
      scene.circles.push_back(
          {integer(origin, c[0], at + "[0]"), integer(origin, c[1], at + "[1]"), integer(origin, c[2], at + "[2]")});
    }
  }
  if (doc.contains("polygons")) {
    const auto& list = array_of(origin, doc["polygons"], "polygons");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "polygons[" + std::to_string(i) + "]";
      geo::ConvexPolygon poly;
      for (std::size_t v = 0; v < array_of(origin, list[i], at).size(); ++v) {
        const std::string vat = at + "[" + std::to_string(v) + "]";
        const auto& p = array_of(origin, list[i][v], vat, 2);
        poly.vertices.push_back({integer(origin, p[0], vat + "[0]"), integer(origin, p[1], vat + "[1]")});
      }
      scene.polygons.push_back(std::move(poly));
    }
  }

  try {
    return geo::validate_scene(std::move(scene));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(origin) + ": " + e.what());
  } catch (const EmptyFeasibleRegionError& e) {
    throw EmptyFeasibleRegionError(std::string(origin) + ": " + e.what());
  }
}

geo::Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scene file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_scene(buf.str(), path.string());
}

std::string dump_scene(const geo::Scene& scene) {
  json doc = json::object();
  doc["schema_version"] = kSceneSchemaVersion;
  doc["n"] = scene.n;
  doc["rectangles"] = json::array();
  for (const auto& r : scene.rectangles) doc["rectangles"].push_back({r.a1, r.a2, r.b1, r.b2});
  doc["circles"] = json::array();
  for (const auto& c : scene.circles) doc["circles"].push_back({c.c1, c.c2, c.r});
  doc["polygons"] = json::array();
  for (const auto& p : scene.polygons) {
    json verts = json::array();
    for (const auto& v : p.vertices) verts.push_back({v.x, v.y});
    doc["polygons"].push_back(std::move(verts));
  }
  return doc.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string scene_hash(const geo::Scene& scene) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(fnv1a64(dump_scene(scene))));
  return buf.data();
}

}  // namespace qdisc::cli
