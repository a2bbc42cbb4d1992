#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ob/billiard.hpp"

namespace ob {

enum class ChordFlag {
    Ok,
    SkippedParallel, // sigma == 0, excluded from the a/b bookkeeping
    VertexTouching,  // an endpoint sits at a vertex; classification best-effort
};

/// One chord of an orbit with its sign and the length marks used by the
/// deformation lemmas: a to the counterclockwise-adjacent vertex of the tail,
/// b to the clockwise-adjacent vertex of the head, d and d' from those
/// vertices to the side-line intersection Q.
struct ChordRecord {
    BoundaryPoint from_pt;
    BoundaryPoint to_pt;
    int sigma = 0;
    std::optional<Vec2> Q;
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double d_prime = 0.0;
    ChordFlag flag = ChordFlag::Ok;
};

/// Chord sign: +1 when the side-line intersection Q lies in the half plane
/// containing the cut region, -1 otherwise, 0 for parallel sides.
/// Throws SameSide, VertexAmbiguous.
int sigma(const Polygon& poly, const BoundaryPoint& x, const BoundaryPoint& y);

/// One ChordRecord per orbit step, vertex-touching chords flagged not fatal.
std::vector<ChordRecord> chord_marks(const Polygon& poly, const OrbitRecord& orbit);

/// Indices of records that enter the skip-filtered a/b sequence.
std::vector<int> filtered_indices(const std::vector<ChordRecord>& marks);

/// Sign-alternation check: every -1 chord must have +1 neighbours in the
/// filtered sequence. Returns indices of violating records.
std::vector<int> verify_lemma1(const std::vector<ChordRecord>& marks, bool cyclic);

struct DeformationRecord {
    double h = 0.0;                       // deformation step in normalized arc length
    std::vector<int> chord_index;         // one entry per orbit chord
    std::vector<double> velocities;       // da_k/dt by symmetric finite difference
    std::vector<double> analytic_ratios;  // predicted velocities[k+1]/velocities[k]; 1 on parallel steps
    bool closed = false;
};

/// Finite-difference orbit deformation. Throws VertexNonSmooth when the
/// deformation window crosses a vertex preimage.
DeformationRecord deformation_velocities(const MapConfig& cfg, const OrbitRecord& orbit,
                                         double h = 1e-6);

struct Lemma2Report {
    double max_product_variation = 0.0; // relative, of (a+d)(b+d') resp. (d-a)(d'-b)
    double max_sum_variation = 0.0;     // relative, of a_{k+1} + b_k
    bool pass = false;
};

Lemma2Report verify_lemma2(const MapConfig& cfg, const OrbitRecord& orbit, double h = 1e-6);

struct Lemma4Report {
    int checked = 0;
    int violations = 0;
    int equality_cases = 0;
    bool same_side_confirmed = true; // every equality case had matching sides
    double worst_defect = 0.0;       // most negative lhs - rhs encountered
};

Lemma4Report verify_lemma4(const MapConfig& cfg, const OrbitRecord& orbit, double h = 1e-6);

struct ReturnDerivative {
    double product = 1.0;    // (phi^q)'(beta_0)
    double paired_sum = 0.0; // sum_{+} v/(a+d) - sum_{-} v/(d-a)
    bool used_fd = false;
};

/// Theorem witness quantity at a q-periodic point.
ReturnDerivative return_derivative(const MapConfig& cfg, long p, long q,
                                   const BoundaryPoint& witness);

/// Closes a generalized orbit cutting areas[0..q-1] with total winding p by
/// bisection inside the bracket. Throws NoClosure.
OrbitRecord fake_orbit(const Polygon& poly, const std::vector<double>& areas, long p,
                       std::pair<double, double> bracket);

} // namespace ob
