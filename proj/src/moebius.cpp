#include "ob/moebius.hpp"

#include <cmath>
#include <limits>

namespace ob {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<Vec2> line_intersection(const ChartedLine& a, const ChartedLine& b) {
    double den = cross(a.dir, b.dir);
    if (std::abs(den) <= 1e-12) return std::nullopt;
    double t = cross(b.origin - a.origin, b.dir) / den;
    return a.origin + t * a.dir;
}

double ProjMap::apply(double u) const {
    double num, den;
    if (std::isinf(u)) {
        num = m00;
        den = m10;
    } else {
        num = m00 * u + m01;
        den = m10 * u + m11;
    }
    if (den == 0.0) return kInf;
    double v = num / den;
    return std::isinf(v) ? kInf : v;
}

ProjMap ProjMap::normalized() const {
    double f = std::sqrt(m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11);
    return {m00 / f, m01 / f, m10 / f, m11 / f};
}

double ProjMap::identity_distance() const {
    ProjMap n = normalized();
    double r = 1.0 / std::sqrt(2.0);
    auto dist_to = [&](double s) {
        double a = n.m00 - s * r, b = n.m01, c = n.m10, d = n.m11 - s * r;
        return std::sqrt(a * a + b * b + c * c + d * d);
    };
    return std::min(dist_to(1.0), dist_to(-1.0));
}

ProjMap operator*(const ProjMap& a, const ProjMap& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

ProjMap compose(const std::vector<ProjMap>& maps) {
    ProjMap acc = ProjMap::identity();
    for (const ProjMap& m : maps) acc = m * acc;
    return acc.normalized();
}

bool is_identity(const ProjMap& m, double tol) { return m.identity_distance() <= tol; }

namespace {

ProjMap hyperbola_map(const ChartedLine& lk, const ChartedLine& lk1, Vec2 I, double K) {
    double o1 = lk.coord(I);
    double o2 = lk1.coord(I);
    // v = o2 + K / (u - o1)
    return {o2, K - o2 * o1, 1.0, -o1};
}

} // namespace

ProjMap area_map(const ChartedLine& lk, const ChartedLine& lk1, double c, int sign) {
    auto I = line_intersection(lk, lk1);
    if (!I) throw ParallelLines("area_map: lines are parallel");
    double sin_theta = std::abs(cross(lk.dir, lk1.dir));
    double K = sign * 2.0 * c / sin_theta;
    return hyperbola_map(lk, lk1, *I, K);
}

ProjMap area_map_through(const ChartedLine& lk, const ChartedLine& lk1, Vec2 in, Vec2 out) {
    auto I = line_intersection(lk, lk1);
    if (!I) throw ParallelLines("area_map_through: lines are parallel");
    double u = lk.coord(in) - lk.coord(*I);
    double v = lk1.coord(out) - lk1.coord(*I);
    return hyperbola_map(lk, lk1, *I, u * v);
}

MarkedConfig triangle_config() {
    MarkedConfig cfg;
    Vec2 I1{1.0, 0.0}, I2{0.0, 1.0}, I3{0.0, 0.0};
    double inv_r2 = 1.0 / std::sqrt(2.0);
    cfg.lines = {
        {I3, {1.0, 0.0}},              // l1: x-axis, toward I1
        {I1, {-inv_r2, inv_r2}},       // l2: through (1,0),(0,1), toward I2
        {I2, {0.0, -1.0}},             // l3: y-axis, toward I3
    };
    cfg.intersections = {I1, I2, I3};
    cfg.marked = {{-1.0, 0.0}, {0.5, 0.5}, {0.0, -1.0}};
    cfg.calibration = {{cfg.marked[0], cfg.marked[1]},
                       {cfg.marked[1], cfg.marked[2]},
                       {cfg.marked[2], cfg.marked[0]}};
    cfg.cut_area = 0.5;
    cfg.sign = -1;
    return cfg;
}

MarkedConfig parallelogram_config() {
    MarkedConfig cfg;
    Vec2 I1{1.0, 0.0}, I2{1.0, 1.0}, I3{0.0, 1.0}, I4{0.0, 0.0};
    cfg.lines = {
        {I4, {1.0, 0.0}},  // l1: y = 0, toward I1
        {I1, {0.0, 1.0}},  // l2: x = 1, toward I2
        {I2, {-1.0, 0.0}}, // l3: y = 1, toward I3
        {I3, {0.0, -1.0}}, // l4: x = 0, toward I4
    };
    cfg.intersections = {I1, I2, I3, I4};
    cfg.marked = {{0.5, 0.0}, {0.5, 1.0}, {0.0, 0.5}};
    cfg.calibration = {{cfg.marked[0], I2},
                       {I1, cfg.marked[1]},
                       {I2, cfg.marked[2]},
                       {I3, cfg.marked[0]}};
    cfg.cut_area = 0.25;
    cfg.sign = -1;
    return cfg;
}

std::vector<ProjMap> config_maps(const MarkedConfig& cfg, bool from_marks) {
    std::vector<ProjMap> maps;
    const size_t n = cfg.lines.size();
    for (size_t k = 0; k < n; ++k) {
        const ChartedLine& a = cfg.lines[k];
        const ChartedLine& b = cfg.lines[(k + 1) % n];
        if (from_marks)
            maps.push_back(area_map_through(a, b, cfg.calibration[k].first,
                                            cfg.calibration[k].second));
        else
            maps.push_back(area_map(a, b, cfg.cut_area, cfg.sign));
    }
    return maps;
}

} // namespace ob
