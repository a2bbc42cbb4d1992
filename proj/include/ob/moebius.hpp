#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ob/geometry.hpp"

namespace ob {

/// A line with a Euclidean coordinate chart: point(u) = origin + u * dir.
struct ChartedLine {
    Vec2 origin;
    Vec2 dir; // unit

    double coord(Vec2 p) const { return dot(p - origin, dir); }
    Vec2 point(double u) const { return origin + u * dir; }
};

std::optional<Vec2> line_intersection(const ChartedLine& a, const ChartedLine& b);

/// 2x2 real matrix modulo scale, acting on an extended-real chart by
/// u -> (m00 u + m01) / (m10 u + m11). Infinity is the single projective one.
struct ProjMap {
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

    static ProjMap identity() { return {}; }
    double apply(double u) const;
    ProjMap inverse() const { return {m11, -m01, -m10, m00}; }
    ProjMap normalized() const; // unit Frobenius norm
    /// Frobenius distance of the normalized matrix to the nearest of +-I/sqrt(2).
    double identity_distance() const;
};

ProjMap operator*(const ProjMap& a, const ProjMap& b);

/// Right-to-left composition: result = maps[n-1] * ... * maps[0], normalized.
ProjMap compose(const std::vector<ProjMap>& maps);

bool is_identity(const ProjMap& m, double tol);

/// Constant-area map l_k -> l_{k+1}: in charts centered at the intersection I
/// the map is u * v = sign * 2c / sin(theta), so infinity goes to I and I to
/// infinity. sign = -1 puts the cut triangle between a point before I on l_k
/// and a point after I on l_{k+1} (the forward cyclic convention).
/// Throws ParallelLines.
ProjMap area_map(const ChartedLine& lk, const ChartedLine& lk1, double c, int sign = -1);

/// Same map with the constant calibrated from a known input/output pair.
ProjMap area_map_through(const ChartedLine& lk, const ChartedLine& lk1, Vec2 in, Vec2 out);

/// Cyclic line configuration with marked calibration points.
struct MarkedConfig {
    std::vector<ChartedLine> lines;
    std::vector<Vec2> intersections;                 // I_k = l_k cap l_{k+1}
    std::vector<std::pair<Vec2, Vec2>> calibration;  // (point on l_k, image on l_{k+1})
    std::vector<Vec2> marked;                        // M_1, M_2, ...
    double cut_area = 0.0;
    int sign = -1;
};

/// l1 = x-axis, l2 through (1,0),(0,1), l3 = y-axis; cut area is the whole
/// triangle. The composition of the three maps is projectively the identity.
MarkedConfig triangle_config();

/// Unit square of lines y=0, x=1, y=1, x=0 cutting a quarter of the area.
MarkedConfig parallelogram_config();

/// Per-edge maps. from_marks calibrates each constant from the marked pair
/// (so perturbing a marked point perturbs the maps); otherwise the constant
/// is 2 * cut_area / sin(theta) with the config sign.
std::vector<ProjMap> config_maps(const MarkedConfig& cfg, bool from_marks = true);

} // namespace ob
