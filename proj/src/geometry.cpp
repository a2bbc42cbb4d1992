#include "ob/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ob {

Polygon validate_polygon(std::vector<Vec2> points) {
    if (points.size() < 3)
        throw TooFewVertices("polygon needs at least 3 vertices, got " +
                             std::to_string(points.size()));

    const int n = static_cast<int>(points.size());

    double scale = 0.0;
    for (const Vec2& p : points) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    if (scale == 0.0) scale = 1.0;

    for (int i = 0; i < n; ++i) {
        if (dist(points[static_cast<size_t>(i)], points[static_cast<size_t>((i + 1) % n)]) <=
            1e-12 * scale)
            throw DuplicateVertex("vertices " + std::to_string(i) + " and " +
                                  std::to_string((i + 1) % n) + " coincide");
    }

    double twice_area = 0.0;
    for (int i = 0; i < n; ++i)
        twice_area += cross(points[static_cast<size_t>(i)], points[static_cast<size_t>((i + 1) % n)]);
    if (twice_area < 0.0) {
        std::reverse(points.begin(), points.end());
        twice_area = -twice_area;
    }

    // Strict convexity; collinear triples are rejected, not merged.
    const double cross_tol = 1e-12 * scale * scale;
    for (int i = 0; i < n; ++i) {
        Vec2 e0 = points[static_cast<size_t>((i + 1) % n)] - points[static_cast<size_t>(i)];
        Vec2 e1 = points[static_cast<size_t>((i + 2) % n)] - points[static_cast<size_t>((i + 1) % n)];
        if (cross(e0, e1) <= cross_tol)
            throw NonConvex("non-convex or collinear at vertex " + std::to_string((i + 1) % n));
    }

    Polygon poly;
    poly.verts_ = std::move(points);
    poly.area_ = 0.5 * twice_area;
    poly.len_.resize(static_cast<size_t>(n));
    poly.cum_.resize(static_cast<size_t>(n) + 1);
    poly.cum_[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        poly.len_[static_cast<size_t>(i)] =
            dist(poly.verts_[static_cast<size_t>(i)], poly.verts_[static_cast<size_t>((i + 1) % n)]);
        poly.cum_[static_cast<size_t>(i) + 1] = poly.cum_[static_cast<size_t>(i)] + poly.len_[static_cast<size_t>(i)];
    }
    poly.perimeter_ = poly.cum_[static_cast<size_t>(n)];
    return poly;
}

BoundaryPoint boundary_point(const Polygon& poly, int side, double t) {
    const int n = poly.size();
    side = ((side % n) + n) % n;
    if (t >= 1.0) {
        side = (side + 1) % n;
        t = 0.0;
    }
    if (t < 0.0) t = 0.0;
    BoundaryPoint p;
    p.side = side;
    p.t = t;
    p.xy = poly.vertex(side) + t * (poly.vertex(side + 1) - poly.vertex(side));
    double arc = poly.cumulative_arc(side) + t * poly.side_length(side);
    p.s = arc / poly.perimeter();
    if (p.s >= 1.0) p.s -= 1.0;
    return p;
}

BoundaryPoint point_at(const Polygon& poly, double s) {
    double frac = s - std::floor(s);
    if (frac >= 1.0) frac = 0.0; // guards s = -tiny rounding
    const double arc = frac * poly.perimeter();
    const int n = poly.size();

    // cum_[k] <= arc < cum_[k+1]
    int lo = 0, hi = n;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        if (poly.cumulative_arc(mid) <= arc)
            lo = mid;
        else
            hi = mid;
    }
    int side = lo;
    double t = (arc - poly.cumulative_arc(side)) / poly.side_length(side);
    if (t >= 1.0) { // rounding at the far vertex
        side = (side + 1) % n;
        t = 0.0;
    }
    BoundaryPoint p;
    p.side = side;
    p.t = t;
    p.xy = poly.vertex(side) + t * (poly.vertex(side + 1) - poly.vertex(side));
    p.s = frac;
    return p;
}

double cut_area(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y) {
    const int n = poly.size();
    if (x.side == y.side && x.t == y.t) return 0.0;

    int m = ((y.side - x.side) % n + n) % n;
    if (m == 0 && y.t < x.t) m = n; // full wrap within one side
    int count = m;
    if (y.t == 0.0) count -= 1; // vertex y.side coincides with y itself

    // shoelace of (x, vertices strictly between, y)
    double sum = 0.0;
    Vec2 prev = x.xy;
    for (int k = 1; k <= count; ++k) {
        Vec2 v = poly.vertex(x.side + k);
        sum += cross(prev, v);
        prev = v;
    }
    sum += cross(prev, y.xy);
    sum += cross(y.xy, x.xy);
    double a = 0.5 * sum;
    return a < 0.0 ? 0.0 : a;
}

std::optional<Vec2> side_line_intersection(const Polygon& poly, int i, int j) {
    Vec2 p = poly.vertex(i), u = poly.side_dir(i);
    Vec2 q = poly.vertex(j), v = poly.side_dir(j);
    double den = cross(u, v);
    if (std::abs(den) <= 1e-12) return std::nullopt;
    // p + t*u = q + r*v  =>  t = cross(q - p, v) / cross(u, v)
    double t = cross(q - p, v) / den;
    return p + t * u;
}

int half_plane_sign(Vec2 chord_from, Vec2 chord_to, Vec2 p) {
    Vec2 e = chord_to - chord_from;
    double elen = norm(e);
    double ref = std::max({1.0, norm(chord_from), norm(chord_to), norm(p)});
    if (elen <= 1e-12 * ref) throw DegenerateChord("chord endpoints coincide");
    double c = cross(e, p - chord_from);
    double tol = 1e-12 * elen * std::max(elen, norm(p - chord_from));
    if (std::abs(c) <= tol) return 0;
    return c > 0.0 ? 1 : -1;
}

double side_line_distance(const Polygon& poly, int i, Vec2 p) {
    return std::abs(cross(poly.side_dir(i), p - poly.vertex(i)));
}

} // namespace ob
