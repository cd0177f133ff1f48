#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "qdisc/geo/scene.hpp"

namespace qdisc::cli {

inline constexpr int kSceneSchemaVersion = 1;

// Parses a scene document:
//   {"schema_version": 1, "n": 3,
//    "rectangles": [[a1, a2, b1, b2]], "circles": [[c1, c2, r]],
//    "polygons": [[[x, y], ...]]}
// The three obstacle lists are optional; any other field is rejected.
// Diagnostics start with `origin`. Throws ParseError for malformed text or
// fields, ValidationError / EmptyFeasibleRegionError / CapacityError for
// scenes that break an obstacle invariant.
geo::Scene parse_scene(std::string_view text, std::string_view origin = "<scene>");

// Throws IoError when the file cannot be read.
geo::Scene load_scene(const std::filesystem::path& path);

// Canonical single-line document for a validated scene.
std::string dump_scene(const geo::Scene& scene);

// 64-bit FNV-1a of dump_scene, as 16 lowercase hex digits.
std::string scene_hash(const geo::Scene& scene);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace qdisc::cli
