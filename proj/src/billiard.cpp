#include "ob/billiard.hpp"

#include <cmath>

namespace ob {

BoundaryPoint phi_step_area(const Polygon& poly, const BoundaryPoint& x, double a) {
    if (!(a > 0.0 && a < 0.5 * poly.area()))
        throw AreaOutOfRange("step area must lie strictly in (0, S/2)");

    const int n = poly.size();
    const double vertex_snap = 1e-12 * poly.perimeter();

    // chain = (x, P_{x.side+1}, ..., P_j); closed area tracked incrementally.
    double chain_sum = 0.0; // sum of cross() over consecutive chain points
    Vec2 last = x.xy;

    for (int step = 1; step <= n; ++step) {
        int j = x.side + step; // vertex being appended; candidate side is j
        Vec2 vj = poly.vertex(j);
        chain_sum += cross(last, vj);
        last = vj;
        // y on side j sweeps area affinely between the two vertex values
        double at_near = 0.5 * (chain_sum + cross(vj, x.xy));
        Vec2 vj1 = poly.vertex(j + 1);
        double at_far = 0.5 * (chain_sum + cross(vj, vj1) + cross(vj1, x.xy));
        if (at_far >= a) {
            double t = (a - at_near) / (at_far - at_near);
            int side = ((j % n) + n) % n;
            double len = poly.side_length(side);
            if (t * len <= vertex_snap) t = 0.0;
            if ((1.0 - t) * len <= vertex_snap) return boundary_point(poly, side + 1, 0.0);
            return boundary_point(poly, side, t);
        }
    }
    throw NumericError("phi: area never reached (should be impossible for A < S/2)");
}

double phi_lift(const MapConfig& cfg, double s_lift) {
    double base = std::floor(s_lift);
    double frac = s_lift - base;
    BoundaryPoint x = point_at(cfg.poly, frac);
    BoundaryPoint y = phi(cfg, x);
    double d = y.s - x.s;
    if (d <= 0.0) d += 1.0;
    // base added last so F(s + 1) - F(s) = 1 holds exactly whenever s + 1 does
    return base + (frac + d);
}

double derivative_step(const Polygon& poly, const BoundaryPoint& x, double a) {
    BoundaryPoint y = phi_step_area(poly, x, a);
    const double snap = 1e-12 * poly.perimeter();
    auto near_vertex = [&](const BoundaryPoint& p) {
        double len = poly.side_length(p.side);
        return std::min(p.t * len, (1.0 - p.t) * len) <= snap;
    };
    if (near_vertex(x) || near_vertex(y))
        throw VertexNonSmooth("map is one-sided at a vertex");
    double num = side_line_distance(poly, x.side, y.xy);
    double den = side_line_distance(poly, y.side, x.xy);
    return num / den;
}

double derivative(const MapConfig& cfg, const BoundaryPoint& x) {
    return derivative_step(cfg.poly, x, cfg.area);
}

OrbitRecord orbit(const MapConfig& cfg, double s0, int n) {
    OrbitRecord rec;
    rec.points.reserve(static_cast<size_t>(n) + 1);
    rec.lift_values.reserve(static_cast<size_t>(n) + 1);

    BoundaryPoint p = point_at(cfg.poly, s0);
    double lift = s0;
    rec.points.push_back(p);
    rec.lift_values.push_back(lift);

    for (int k = 0; k < n; ++k) {
        double df;
        try {
            df = derivative(cfg, p);
        } catch (const VertexNonSmooth&) {
            const double h = 1e-7;
            df = (phi_lift(cfg, lift + h) - phi_lift(cfg, lift - h)) / (2.0 * h);
            rec.vertex_flagged = true;
        }
        rec.derivative_product *= df;

        BoundaryPoint q = phi(cfg, p);
        double d = q.s - p.s;
        if (d <= 0.0) d += 1.0;
        lift += d;
        p = q;
        rec.points.push_back(p);
        rec.lift_values.push_back(lift);
    }
    rec.winding = static_cast<int>(std::floor(rec.lift_values.back() - rec.lift_values.front() + 1e-12));
    return rec;
}

Vec2 envelope_midpoint(const MapConfig& cfg, const BoundaryPoint& x) {
    BoundaryPoint y = phi(cfg, x);
    return 0.5 * (x.xy + y.xy);
}

} // namespace ob
