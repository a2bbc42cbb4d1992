#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ob/billiard.hpp"

namespace ob {

struct RotationEstimate {
    double value = 0.0;
    bool exact = false; // true: value == p/q from a detected periodic orbit
    long p = 0;
    long q = 0;
    long iterations = 0;
    double error_bound = 0.0;
    std::optional<BoundaryPoint> witness; // a q-periodic point when exact
};

struct RotationOptions {
    long iters = 200000; // long-run iteration count
    long q_max = 200;    // deepest rational denominator searched
    int grid = 64;       // displacement samples per polygon side
};

/// (F^n(s0) - s0) / n with error bound 1/n.
RotationEstimate rotation_number_longrun(const MapConfig& cfg, double s0, long n);

/// g(s) = F^q(s) - s - p. tau == p/q iff g attains 0 somewhere.
double displacement(const MapConfig& cfg, long p, long q, double s);

struct RationalWitness {
    long p = 0;
    long q = 0;
    BoundaryPoint point;
    double s = 0.0;
};

/// Stern-Brocot walk over (0, 1/2) guided by the sign of the displacement
/// extrema (grid sampling + bisection / extremum refinement). Returns the
/// unique p/q with a displacement zero and q <= q_max, or nothing.
std::optional<RationalWitness> detect_rational(const MapConfig& cfg, long q_max, int grid);

/// True iff g_{p,q} attains zero; used by plateau bisection.
bool has_periodic_orbit(const MapConfig& cfg, long p, long q, int grid);

/// All transverse zeros of g_{p,q} on [0, 1), plus refined tangential ones.
std::vector<double> displacement_zeros(const MapConfig& cfg, long p, long q, int grid);

/// Exact rational when detectable, long-run average otherwise.
RotationEstimate rotation_number(const MapConfig& cfg, const RotationOptions& opts = {});

struct StaircaseRow {
    double A = 0.0;
    double A_over_S = 0.0;
    double tau = 0.0;
    long p = 0;
    long q = 0;
    bool exact = false;
};

struct SweepOptions : RotationOptions {
    int jobs = 1;
};

/// Rotation number over a uniform grid of areas in [A_lo, A_hi].
std::vector<StaircaseRow> staircase_sweep(const Polygon& poly, double A_lo, double A_hi,
                                          int samples, const SweepOptions& opts = {});

/// Bisection on A for the endpoints of the p/q plateau inside [A1, A2].
/// Returns {A_lo, A_hi} within tol. Throws BracketInvalid.
std::pair<double, double> plateau_bounds(const Polygon& poly, long p, long q, double A1,
                                         double A2, double tol,
                                         const RotationOptions& opts = {});

} // namespace ob
