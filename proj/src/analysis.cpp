#include "ob/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ob {

namespace {

bool near_vertex(const Polygon& poly, const BoundaryPoint& p) {
    double len = poly.side_length(p.side);
    return std::min(p.t * len, (1.0 - p.t) * len) <= 1e-12 * poly.perimeter();
}

int classify(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y,
             const std::optional<Vec2>& Q) {
    if (!Q) return 0;
    // any vertex strictly between x and y lies in the cut region
    Vec2 witness = poly.vertex(x.side + 1);
    int sQ = half_plane_sign(x.xy, y.xy, *Q);
    int sW = half_plane_sign(x.xy, y.xy, witness);
    return sQ == sW ? 1 : -1;
}

ChordRecord make_record(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y) {
    ChordRecord rec;
    rec.from_pt = x;
    rec.to_pt = y;
    if (x.side == y.side) throw SameSide("chord endpoints on one side cannot cut positive area");
    rec.Q = side_line_intersection(poly, x.side, y.side);
    rec.sigma = classify(poly, x, y, rec.Q);
    rec.flag = rec.sigma == 0 ? ChordFlag::SkippedParallel : ChordFlag::Ok;
    if (near_vertex(poly, x) || near_vertex(poly, y)) rec.flag = ChordFlag::VertexTouching;
    rec.a = dist(x.xy, poly.vertex(x.side + 1));
    rec.b = dist(y.xy, poly.vertex(y.side));
    if (rec.Q) {
        rec.d = dist(*rec.Q, poly.vertex(x.side + 1));
        rec.d_prime = dist(*rec.Q, poly.vertex(y.side));
    }
    return rec;
}

bool orbit_closed(const OrbitRecord& orbit) {
    double disp = orbit.lift_values.back() - orbit.lift_values.front();
    return std::abs(disp - std::round(disp)) <= 1e-9;
}

bool same_sides(const OrbitRecord& a, const OrbitRecord& b) {
    if (a.points.size() != b.points.size()) return false;
    for (size_t i = 0; i < a.points.size(); ++i)
        if (a.points[i].side != b.points[i].side) return false;
    return true;
}

} // namespace

int sigma(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.side == y.side) throw SameSide("sigma: endpoints on the same side");
    if (near_vertex(poly, x) || near_vertex(poly, y))
        throw VertexAmbiguous("sigma: endpoint at a vertex");
    return classify(poly, x, y, side_line_intersection(poly, x.side, y.side));
}

std::vector<ChordRecord> chord_marks(const Polygon& poly, const OrbitRecord& orbit) {
    std::vector<ChordRecord> marks;
    marks.reserve(orbit.points.size() - 1);
    for (size_t i = 0; i + 1 < orbit.points.size(); ++i)
        marks.push_back(make_record(poly, orbit.points[i], orbit.points[i + 1]));
    return marks;
}

std::vector<int> filtered_indices(const std::vector<ChordRecord>& marks) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(marks.size()); ++i)
        if (marks[static_cast<size_t>(i)].sigma != 0) idx.push_back(i);
    return idx;
}

std::vector<int> verify_lemma1(const std::vector<ChordRecord>& marks, bool cyclic) {
    std::vector<int> seq = filtered_indices(marks);
    std::vector<int> violations;
    const int m = static_cast<int>(seq.size());
    for (int k = 0; k < m; ++k) {
        if (marks[static_cast<size_t>(seq[static_cast<size_t>(k)])].sigma != -1) continue;
        bool bad = false;
        if (k + 1 < m)
            bad |= marks[static_cast<size_t>(seq[static_cast<size_t>(k + 1)])].sigma != 1;
        else if (cyclic && m > 1)
            bad |= marks[static_cast<size_t>(seq[0])].sigma != 1;
        if (k - 1 >= 0)
            bad |= marks[static_cast<size_t>(seq[static_cast<size_t>(k - 1)])].sigma != 1;
        else if (cyclic && m > 1)
            bad |= marks[static_cast<size_t>(seq[static_cast<size_t>(m - 1)])].sigma != 1;
        if (bad) violations.push_back(seq[static_cast<size_t>(k)]);
    }
    return violations;
}

DeformationRecord deformation_velocities(const MapConfig& cfg, const OrbitRecord& orb,
                                         double h) {
    const int n = static_cast<int>(orb.points.size()) - 1;
    const double s0 = orb.lift_values.front();

    OrbitRecord plus = orbit(cfg, s0 + h, n);
    OrbitRecord minus = orbit(cfg, s0 - h, n);
    if (!same_sides(plus, orb) || !same_sides(minus, orb))
        throw VertexNonSmooth("deformation crosses a vertex preimage");

    std::vector<ChordRecord> m0 = chord_marks(cfg.poly, orb);
    std::vector<ChordRecord> mp = chord_marks(cfg.poly, plus);
    std::vector<ChordRecord> mm = chord_marks(cfg.poly, minus);

    DeformationRecord rec;
    rec.h = h;
    rec.closed = orbit_closed(orb);
    for (size_t k = 0; k < m0.size(); ++k) {
        const ChordRecord& c = m0[k];
        rec.chord_index.push_back(static_cast<int>(k));
        rec.velocities.push_back((mp[k].a - mm[k].a) / (2.0 * h));
        // parallel steps preserve the deformation speed
        double ratio = 1.0;
        if (c.sigma == 1)
            ratio = (c.b + c.d_prime) / (c.a + c.d);
        else if (c.sigma == -1)
            ratio = (c.d_prime - c.b) / (c.d - c.a);
        rec.analytic_ratios.push_back(ratio);
    }
    return rec;
}

Lemma2Report verify_lemma2(const MapConfig& cfg, const OrbitRecord& orb, double h) {
    const int n = static_cast<int>(orb.points.size()) - 1;
    const double s0 = orb.lift_values.front();
    const double offsets[] = {-10.0 * h, -5.0 * h, 0.0, 5.0 * h, 10.0 * h};

    std::vector<int> seq;
    std::vector<std::vector<double>> products; // per offset, per filtered chord
    std::vector<std::vector<double>> sums;     // per offset, per consecutive pair

    for (double off : offsets) {
        OrbitRecord o = off == 0.0 ? orb : orbit(cfg, s0 + off, n);
        if (!same_sides(o, orb))
            throw VertexNonSmooth("lemma 2 deformation crosses a vertex preimage");
        std::vector<ChordRecord> marks = chord_marks(cfg.poly, o);
        std::vector<int> f = filtered_indices(marks);
        if (seq.empty()) seq = f;

        std::vector<double> prod, sum;
        for (size_t j = 0; j < f.size(); ++j) {
            const ChordRecord& c = marks[static_cast<size_t>(f[j])];
            prod.push_back(c.sigma == 1 ? (c.a + c.d) * (c.b + c.d_prime)
                                        : (c.d - c.a) * (c.d_prime - c.b));
            // deformed orbits are not periodic, so pairs never wrap around
            size_t jn = j + 1;
            if (jn == f.size()) continue;
            const ChordRecord& next = marks[static_cast<size_t>(f[jn])];
            sum.push_back(next.a + c.b);
        }
        products.push_back(std::move(prod));
        sums.push_back(std::move(sum));
    }

    auto max_rel_variation = [](const std::vector<std::vector<double>>& table) {
        double worst = 0.0;
        if (table.empty() || table[0].empty()) return worst;
        for (size_t j = 0; j < table[0].size(); ++j) {
            double lo = table[0][j], hi = table[0][j];
            for (const auto& row : table) {
                lo = std::min(lo, row[j]);
                hi = std::max(hi, row[j]);
            }
            double mid = std::max(std::abs(0.5 * (lo + hi)), 1e-300);
            worst = std::max(worst, (hi - lo) / mid);
        }
        return worst;
    };

    Lemma2Report report;
    report.max_product_variation = max_rel_variation(products);
    report.max_sum_variation = max_rel_variation(sums);
    report.pass = report.max_product_variation <= 1e-7 && report.max_sum_variation <= 1e-7;
    return report;
}

Lemma4Report verify_lemma4(const MapConfig& cfg, const OrbitRecord& orb, double h) {
    std::vector<ChordRecord> marks = chord_marks(cfg.poly, orb);

    Lemma4Report report;
    std::vector<int> f = filtered_indices(marks);
    const size_t m = f.size();
    if (m < 2) return report;

    // forward deformation speeds: cumulative per-step derivatives (the mark
    // velocity of chord k is the arc speed of its tail point)
    std::vector<double> v(marks.size());
    double acc = 1.0;
    for (size_t k = 0; k < marks.size(); ++k) {
        v[k] = acc;
        double df;
        try {
            df = derivative(cfg, orb.points[k]);
        } catch (const VertexNonSmooth&) {
            df = (phi_lift(cfg, orb.lift_values[k] + h) -
                  phi_lift(cfg, orb.lift_values[k] - h)) /
                 (2.0 * h);
        }
        acc *= df;
    }
    const double full_product = acc;

    for (size_t j = 0; j < m; ++j) {
        const ChordRecord& c = marks[static_cast<size_t>(f[j])];
        if (c.sigma != -1) continue;
        size_t jn = j + 1;
        double wrap = 1.0;
        if (jn == m) {
            if (!orbit_closed(orb)) continue;
            jn = 0;
            wrap = full_product; // the next period's copy moves that much faster
        }
        const ChordRecord& next = marks[static_cast<size_t>(f[jn])];
        double lhs = wrap * v[static_cast<size_t>(f[jn])] / (next.d + next.a);
        double rhs = v[static_cast<size_t>(f[j])] / (c.d - c.a);
        double tol = 1e-9 * (1.0 + std::abs(rhs));
        report.checked += 1;
        double defect = lhs - rhs;
        report.worst_defect = std::min(report.worst_defect, defect);
        if (defect < -tol) {
            report.violations += 1;
        } else if (std::abs(defect) <= tol) {
            report.equality_cases += 1;
            if (next.to_pt.side != c.from_pt.side) report.same_side_confirmed = false;
        }
    }
    return report;
}

ReturnDerivative return_derivative(const MapConfig& cfg, long p, long q,
                                   const BoundaryPoint& witness) {
    (void)p;
    OrbitRecord orb = orbit(cfg, witness.s, static_cast<int>(q));
    ReturnDerivative out;
    out.product = orb.derivative_product;
    out.used_fd = orb.vertex_flagged;
    try {
        DeformationRecord def = deformation_velocities(cfg, orb, 1e-6);
        std::vector<ChordRecord> marks = chord_marks(cfg.poly, orb);
        double sum = 0.0;
        for (int k : filtered_indices(marks)) {
            const ChordRecord& c = marks[static_cast<size_t>(k)];
            double vj = def.velocities[static_cast<size_t>(k)];
            if (c.sigma == 1)
                sum += vj / (c.a + c.d);
            else
                sum -= vj / (c.d - c.a);
        }
        out.paired_sum = sum;
    } catch (const VertexNonSmooth&) {
        out.paired_sum = std::numeric_limits<double>::quiet_NaN();
        out.used_fd = true;
    }
    return out;
}

OrbitRecord fake_orbit(const Polygon& poly, const std::vector<double>& areas, long p,
                       std::pair<double, double> bracket) {
    if (areas.empty()) throw ValidationError("fake_orbit: empty area list");
    for (double a : areas)
        if (!(a > 0.0 && a < 0.5 * poly.area()))
            throw AreaOutOfRange("fake_orbit: each area must lie in (0, S/2)");

    auto lift_total = [&](double s) {
        double lift = s;
        BoundaryPoint x = point_at(poly, s);
        for (double a : areas) {
            BoundaryPoint y = phi_step_area(poly, x, a);
            double d = y.s - x.s;
            if (d <= 0.0) d += 1.0;
            lift += d;
            x = y;
        }
        return lift;
    };
    auto g = [&](double s) { return lift_total(s) - s - static_cast<double>(p); };

    const int K = 256;
    double s_lo = bracket.first, s_hi = bracket.second;
    if (!(s_hi > s_lo)) throw BracketInvalid("fake_orbit: empty bracket");

    double sa = s_lo, ga = g(sa);
    double found_a = 0.0, found_ga = 0.0, found_b = 0.0;
    bool found = false;
    for (int i = 1; i <= K && !found; ++i) {
        double sb = s_lo + (s_hi - s_lo) * i / K;
        double gb = g(sb);
        if (ga == 0.0 || (ga > 0.0) != (gb > 0.0)) {
            found = true;
            found_a = sa;
            found_ga = ga;
            found_b = sb;
        }
        sa = sb;
        ga = gb;
    }
    if (!found) throw NoClosure("fake_orbit: displacement has no sign change in the bracket");

    double lo = found_a, hi = found_b, glo = found_ga;
    for (int i = 0; i < 90 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    double s0 = 0.5 * (lo + hi);

    OrbitRecord rec;
    BoundaryPoint x = point_at(poly, s0);
    double lift = s0;
    rec.points.push_back(x);
    rec.lift_values.push_back(lift);
    for (double a : areas) {
        double df;
        try {
            df = derivative_step(poly, x, a);
        } catch (const VertexNonSmooth&) {
            const double h = 1e-7;
            auto one = [&](double s) {
                BoundaryPoint u = point_at(poly, s);
                BoundaryPoint w = phi_step_area(poly, u, a);
                double d = w.s - u.s;
                if (d <= 0.0) d += 1.0;
                return s + d;
            };
            df = (one(x.s + h) - one(x.s - h)) / (2.0 * h);
            rec.vertex_flagged = true;
        }
        rec.derivative_product *= df;
        BoundaryPoint y = phi_step_area(poly, x, a);
        double d = y.s - x.s;
        if (d <= 0.0) d += 1.0;
        lift += d;
        x = y;
        rec.points.push_back(x);
        rec.lift_values.push_back(lift);
    }
    rec.winding = static_cast<int>(std::floor(lift - s0 + 1e-9));
    return rec;
}

} // namespace ob
