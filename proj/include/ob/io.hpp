#pragma once

#include <string>

#include "ob/geometry.hpp"

namespace ob {

/// Reads a polygon from a JSON array of [x, y] pairs; orientation is
/// auto-corrected by validate_polygon.
Polygon load_polygon_json(const std::string& path);

/// Deterministic numeric formatting for CSV output (shortest round-trip).
std::string fmt_double(double v);

} // namespace ob
