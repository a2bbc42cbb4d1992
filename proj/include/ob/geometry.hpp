#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ob/errors.hpp"

namespace ob {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Strictly convex polygon, counterclockwise vertex loop.
class Polygon {
public:
    int size() const { return static_cast<int>(verts_.size()); }
    /// Vertex by cyclic index (any integer).
    Vec2 vertex(int i) const {
        int n = size();
        int k = ((i % n) + n) % n;
        return verts_[static_cast<size_t>(k)];
    }
    const std::vector<Vec2>& vertices() const { return verts_; }
    double side_length(int i) const { return len_[static_cast<size_t>(((i % size()) + size()) % size())]; }
    /// Unit direction of side i (vertex i -> vertex i+1).
    Vec2 side_dir(int i) const {
        Vec2 e = vertex(i + 1) - vertex(i);
        return (1.0 / norm(e)) * e;
    }
    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    /// Arc length from vertex 0 to vertex i; cumulative_arc(size()) == perimeter().
    double cumulative_arc(int i) const { return cum_[static_cast<size_t>(i)]; }

private:
    friend Polygon validate_polygon(std::vector<Vec2> points);
    Polygon() = default;
    std::vector<Vec2> verts_;
    std::vector<double> len_;
    std::vector<double> cum_; // size n+1, cum_[0] == 0, cum_[n] == perimeter
    double perimeter_ = 0.0;
    double area_ = 0.0;
};

/// Point on the polygon boundary. Sides are half-open [P_i, P_{i+1}), so a
/// vertex is always (side=i, t=0) on its outgoing side.
struct BoundaryPoint {
    int side = 0;
    double t = 0.0; // fraction along the side, in [0, 1)
    Vec2 xy;
    double s = 0.0; // normalized arc length in [0, 1)
};

/// Validates, orients counterclockwise and builds the arc-length tables.
/// Throws TooFewVertices, DuplicateVertex, NonConvex.
Polygon validate_polygon(std::vector<Vec2> points);

/// Boundary point at normalized arc length s (any real, reduced mod 1).
BoundaryPoint point_at(const Polygon& poly, double s);

/// Boundary point from (side, t); canonicalizes t ~ 1 onto the next side.
BoundaryPoint boundary_point(const Polygon& poly, int side, double t);

inline double arc_of(const BoundaryPoint& p) { return p.s; }

/// Area of the region bounded by the chord x->y and the counterclockwise
/// boundary arc from x to y. cut_area(x, x) == 0.
double cut_area(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y);

/// Intersection of the infinite lines through sides i and j, or nothing when
/// the sides are parallel (|cross of unit directions| <= 1e-12).
std::optional<Vec2> side_line_intersection(const Polygon& poly, int i, int j);

/// Sign of cross(to - from, p - from): +1 left, -1 right, 0 on the line
/// (within a 1e-12 relative band). Throws DegenerateChord.
int half_plane_sign(Vec2 chord_from, Vec2 chord_to, Vec2 p);

/// Distance from p to the infinite line through side i.
double side_line_distance(const Polygon& poly, int i, Vec2 p);

} // namespace ob
