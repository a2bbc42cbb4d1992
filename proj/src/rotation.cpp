#include "ob/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ob {

namespace {

constexpr double kTangentTol = 1e-9; // |g| below this counts as a zero

// Golden-section minimization of f on [a, b].
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters = 90) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

template <typename F>
double bisect_zero(F&& g, double sa, double sb, double ga) {
    for (int i = 0; i < 80; ++i) {
        double sm = 0.5 * (sa + sb);
        double gm = g(sm);
        if (gm == 0.0) return sm;
        if ((gm > 0.0) == (ga > 0.0)) {
            sa = sm;
            ga = gm;
        } else {
            sb = sm;
        }
        if (sb - sa < 1e-15) break;
    }
    return 0.5 * (sa + sb);
}

enum class ScanResult { Zero, AllPositive, AllNegative };

// Grid scan of g_{p,q}; on success *zero_s receives a point with |g| small.
ScanResult scan_displacement(const MapConfig& cfg, long p, long q, int grid, double* zero_s) {
    const int N = std::max(8, grid) * cfg.poly.size();
    auto g = [&](double s) { return displacement(cfg, p, q, s); };

    std::vector<double> vals(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) vals[static_cast<size_t>(i)] = g(static_cast<double>(i) / N);

    for (int i = 0; i < N; ++i) {
        double g0 = vals[static_cast<size_t>(i)];
        double g1 = vals[static_cast<size_t>((i + 1) % N)];
        if (std::abs(g0) <= kTangentTol) {
            if (zero_s) *zero_s = static_cast<double>(i) / N;
            return ScanResult::Zero;
        }
        if ((g0 > 0.0) != (g1 > 0.0)) {
            double sa = static_cast<double>(i) / N;
            double sb = static_cast<double>(i + 1) / N;
            if (zero_s) *zero_s = bisect_zero(g, sa, sb, g0);
            return ScanResult::Zero;
        }
    }

    // Same sign everywhere: refine the extremum nearest to zero, the map may
    // touch tangentially (parabolic orbit at a plateau edge).
    bool positive = vals[0] > 0.0;
    auto cmp = [&](double x, double y) { return positive ? x < y : x > y; };
    int best = 0;
    for (int i = 1; i < N; ++i)
        if (cmp(vals[static_cast<size_t>(i)], vals[static_cast<size_t>(best)])) best = i;
    double a = static_cast<double>(best - 1) / N;
    double b = static_cast<double>(best + 1) / N;
    auto h = [&](double s) { return positive ? g(s) : -g(s); };
    auto [sx, hx] = golden_min(h, a, b);
    if (hx <= kTangentTol) {
        if (zero_s) *zero_s = sx;
        return ScanResult::Zero;
    }
    return positive ? ScanResult::AllPositive : ScanResult::AllNegative;
}

} // namespace

RotationEstimate rotation_number_longrun(const MapConfig& cfg, double s0, long n) {
    double lift = s0;
    BoundaryPoint p = point_at(cfg.poly, s0);
    for (long k = 0; k < n; ++k) {
        BoundaryPoint q = phi(cfg, p);
        double d = q.s - p.s;
        if (d <= 0.0) d += 1.0;
        lift += d;
        p = q;
    }
    RotationEstimate est;
    est.value = (lift - s0) / static_cast<double>(n);
    est.exact = false;
    est.iterations = n;
    est.error_bound = 1.0 / static_cast<double>(n);
    return est;
}

double displacement(const MapConfig& cfg, long p, long q, double s) {
    double total = 0.0;
    BoundaryPoint x = point_at(cfg.poly, s);
    for (long k = 0; k < q; ++k) {
        BoundaryPoint y = phi(cfg, x);
        double d = y.s - x.s;
        if (d <= 0.0) d += 1.0;
        total += d;
        x = y;
    }
    return total - static_cast<double>(p);
}

std::optional<RationalWitness> detect_rational(const MapConfig& cfg, long q_max, int grid) {
    // tau always lies in (0, 1/2) for A < S/2
    long lo_p = 0, lo_q = 1;
    long hi_p = 1, hi_q = 2;
    while (true) {
        long p = lo_p + hi_p;
        long q = lo_q + hi_q;
        if (q > q_max) return std::nullopt;
        double zs = 0.0;
        switch (scan_displacement(cfg, p, q, grid, &zs)) {
            case ScanResult::Zero: {
                RationalWitness w;
                w.p = p;
                w.q = q;
                w.s = zs;
                w.point = point_at(cfg.poly, zs);
                return w;
            }
            case ScanResult::AllPositive:
                lo_p = p;
                lo_q = q;
                break;
            case ScanResult::AllNegative:
                hi_p = p;
                hi_q = q;
                break;
        }
    }
}

bool has_periodic_orbit(const MapConfig& cfg, long p, long q, int grid) {
    return scan_displacement(cfg, p, q, grid, nullptr) == ScanResult::Zero;
}

std::vector<double> displacement_zeros(const MapConfig& cfg, long p, long q, int grid) {
    const int N = std::max(8, grid) * cfg.poly.size();
    auto g = [&](double s) { return displacement(cfg, p, q, s); };
    std::vector<double> zeros;
    double prev = g(0.0);
    for (int i = 0; i < N; ++i) {
        double sa = static_cast<double>(i) / N;
        double sb = static_cast<double>(i + 1) / N;
        double next = g(sb);
        if (prev == 0.0)
            zeros.push_back(sa);
        else if ((prev > 0.0) != (next > 0.0))
            zeros.push_back(bisect_zero(g, sa, sb, prev));
        prev = next;
    }
    return zeros;
}

RotationEstimate rotation_number(const MapConfig& cfg, const RotationOptions& opts) {
    if (auto w = detect_rational(cfg, opts.q_max, opts.grid)) {
        RotationEstimate est;
        est.value = static_cast<double>(w->p) / static_cast<double>(w->q);
        est.exact = true;
        est.p = w->p;
        est.q = w->q;
        est.iterations = 0;
        est.error_bound = 0.0;
        est.witness = w->point;
        return est;
    }
    return rotation_number_longrun(cfg, 0.123456789, opts.iters);
}

std::vector<StaircaseRow> staircase_sweep(const Polygon& poly, double A_lo, double A_hi,
                                          int samples, const SweepOptions& opts) {
    const double S = poly.area();
    if (!(A_lo > 0.0 && A_lo < A_hi && A_hi < 0.5 * S))
        throw AreaOutOfRange("sweep range must satisfy 0 < A_lo < A_hi < S/2");
    if (samples < 1) throw ValidationError("samples must be >= 1");

    std::vector<StaircaseRow> rows(static_cast<size_t>(samples));
    auto run = [&](int i) {
        double A = samples == 1
                       ? A_lo
                       : A_lo + (A_hi - A_lo) * static_cast<double>(i) / (samples - 1);
        MapConfig cfg(poly, A);
        RotationEstimate est = rotation_number(cfg, opts);
        StaircaseRow& r = rows[static_cast<size_t>(i)];
        r.A = A;
        r.A_over_S = A / S;
        r.tau = est.value;
        r.p = est.p;
        r.q = est.q;
        r.exact = est.exact;
    };

    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (int i = 0; i < samples; ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < samples; i += jobs) run(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::pair<double, double> plateau_bounds(const Polygon& poly, long p, long q, double A1,
                                         double A2, double tol, const RotationOptions& opts) {
    if (!(A1 < A2)) throw BracketInvalid("plateau bracket must satisfy A1 < A2");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");

    auto found = [&](double A) {
        MapConfig cfg(poly, A);
        return has_periodic_orbit(cfg, p, q, opts.grid);
    };

    bool f1 = found(A1), f2 = found(A2);
    double anchor = A1;
    bool have_anchor = f1;
    if (!have_anchor && f2) {
        anchor = A2;
        have_anchor = true;
    }
    if (!have_anchor) {
        for (int i = 1; i < 32 && !have_anchor; ++i) {
            double A = A1 + (A2 - A1) * i / 32.0;
            if (found(A)) {
                anchor = A;
                have_anchor = true;
            }
        }
    }
    if (!have_anchor)
        throw BracketInvalid("no A in the bracket carries the requested rotation number");

    auto edge = [&](double out, double in) {
        // found(in) == true, found(out) == false
        while (std::abs(in - out) > tol) {
            double mid = 0.5 * (in + out);
            if (found(mid))
                in = mid;
            else
                out = mid;
        }
        return in;
    };

    double lo = f1 ? A1 : edge(A1, anchor);
    double hi = f2 ? A2 : edge(A2, anchor);
    return {lo, hi};
}

} // namespace ob
