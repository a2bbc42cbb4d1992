#pragma once

#include <vector>

#include "ob/geometry.hpp"

namespace ob {

/// Constant-area chord map configuration. Requires 0 < A < area/2.
struct MapConfig {
    Polygon poly;
    double area;

    MapConfig(Polygon p, double a) : poly(std::move(p)), area(a) {
        if (!(area > 0.0 && area < 0.5 * poly.area()))
            throw AreaOutOfRange("area must lie strictly in (0, S/2)");
    }
};

/// One generalized step: the unique y counterclockwise of x with
/// cut_area(x, y) == a. Walks vertices accumulating fan area, then solves
/// the affine-in-t equation on the crossing side.
BoundaryPoint phi_step_area(const Polygon& poly, const BoundaryPoint& x, double a);

/// Forward constant-area chord map.
inline BoundaryPoint phi(const MapConfig& cfg, const BoundaryPoint& x) {
    return phi_step_area(cfg.poly, x, cfg.area);
}

/// Lift F of the boundary map to the real line, F(s + 1) == F(s) + 1.
double phi_lift(const MapConfig& cfg, double s_lift);

/// One-step derivative dF/ds at x, as the ratio of side-line distances
/// dist(y, line(x)) / dist(x, line(y)) with y = phi(x).
/// Throws VertexNonSmooth when x or y sits at a vertex.
double derivative(const MapConfig& cfg, const BoundaryPoint& x);
double derivative_step(const Polygon& poly, const BoundaryPoint& x, double a);

struct OrbitRecord {
    std::vector<BoundaryPoint> points; // n+1 entries
    std::vector<double> lift_values;   // strictly increasing, n+1 entries
    int winding = 0;
    double derivative_product = 1.0;
    bool vertex_flagged = false; // some step fell back to finite differences
};

OrbitRecord orbit(const MapConfig& cfg, double s0, int n);

/// Tangency point of the chord (x, phi(x)) with the table: the chord midpoint.
Vec2 envelope_midpoint(const MapConfig& cfg, const BoundaryPoint& x);

} // namespace ob
