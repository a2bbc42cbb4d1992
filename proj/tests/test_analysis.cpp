#include "doctest.h"

#include <cmath>
#include <random>

#include "ob/analysis.hpp"
#include "testutil.hpp"

using namespace ob;
using obtest::unit_square;

namespace {
const double kUMinus = (1.0 - std::sqrt(0.2)) / 2.0;
const double kUPlus = (1.0 + std::sqrt(0.2)) / 2.0;
const double kRatio = (3.0 - std::sqrt(5.0)) / 2.0; // per-step derivative at the attracting orbit

// arc coordinate of (1, 1.75) on the top side of the lemma quad
double quad_top_s(const Polygon& quad) {
    return (quad.cumulative_arc(2) + 0.75 * dist(quad.vertex(2), quad.vertex(3))) /
           quad.perimeter();
}
} // namespace

TEST_CASE("sigma: classification examples") {
    Polygon sq = unit_square();
    BoundaryPoint x = boundary_point(sq, 0, kUMinus);
    BoundaryPoint y = boundary_point(sq, 1, kUMinus);
    CHECK(sigma(sq, x, y) == 1);

    CHECK(sigma(sq, boundary_point(sq, 0, 0.5), boundary_point(sq, 2, 0.4)) == 0);

    Polygon quad = obtest::lemma_quad();
    BoundaryPoint qx = point_at(quad, quad_top_s(quad)); // (1, 1.75)
    BoundaryPoint qy = boundary_point(quad, 0, 0.25);    // (1, 0)
    CHECK(qx.xy.x == doctest::Approx(1.0));
    CHECK(qx.xy.y == doctest::Approx(1.75));
    CHECK(sigma(quad, qx, qy) == -1);

    CHECK_THROWS_AS(sigma(sq, boundary_point(sq, 1, 0.3), boundary_point(sq, 1, 0.7)), SameSide);
    CHECK_THROWS_AS(sigma(sq, boundary_point(sq, 0, 0.0), boundary_point(sq, 1, 0.5)),
                    VertexAmbiguous);
}

TEST_CASE("chord_marks: square periodic orbit, corner Q") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.1);
    OrbitRecord orb = orbit(cfg, kUMinus / 4.0, 4);
    std::vector<ChordRecord> marks = chord_marks(sq, orb);
    REQUIRE(marks.size() == 4);
    for (const ChordRecord& c : marks) {
        CHECK(c.sigma == 1);
        CHECK(c.flag == ChordFlag::Ok);
        CHECK(c.a == doctest::Approx(kUPlus).epsilon(1e-9));
        CHECK(c.b == doctest::Approx(kUMinus).epsilon(1e-9));
        CHECK(c.d == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
        CHECK(c.d_prime == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
        REQUIRE(c.Q.has_value());
        CHECK(dist(c.from_pt.xy, *c.Q) == doctest::Approx(c.a + c.d).epsilon(1e-9));
        CHECK(dist(c.to_pt.xy, *c.Q) == doctest::Approx(c.b + c.d_prime).epsilon(1e-9));
    }
    CHECK(verify_lemma1(marks, true).empty());
}

TEST_CASE("chord_marks: quad sigma=-1 distances") {
    Polygon quad = obtest::lemma_quad();
    MapConfig cfg(quad, 1.875);
    OrbitRecord orb = orbit(cfg, quad_top_s(quad), 1);
    std::vector<ChordRecord> marks = chord_marks(quad, orb);
    REQUIRE(marks.size() == 1);
    const ChordRecord& c = marks[0];
    CHECK(c.sigma == -1);
    CHECK(c.a == doctest::Approx(1.03078).epsilon(1e-5));
    CHECK(c.b == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.d == doctest::Approx(8.24621).epsilon(1e-5));
    CHECK(c.d_prime == doctest::Approx(8.0).epsilon(1e-9));
    REQUIRE(c.Q.has_value());
    CHECK(c.Q->x == doctest::Approx(8.0));
    CHECK(dist(c.from_pt.xy, *c.Q) == doctest::Approx(c.d - c.a).epsilon(1e-9));
    CHECK(dist(c.to_pt.xy, *c.Q) == doctest::Approx(c.d_prime - c.b).epsilon(1e-9));
}

TEST_CASE("chord_marks: parallel step is flagged and skipped") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.45);
    OrbitRecord orb = orbit(cfg, 0.125, 1);
    std::vector<ChordRecord> marks = chord_marks(sq, orb);
    REQUIRE(marks.size() == 1);
    CHECK(marks[0].sigma == 0);
    CHECK(marks[0].flag == ChordFlag::SkippedParallel);
    CHECK(!marks[0].Q.has_value());
    CHECK(filtered_indices(marks).empty());
}

TEST_CASE("verify_lemma1: injected fault and random orbits") {
    ChordRecord bad;
    bad.sigma = -1;
    std::vector<ChordRecord> fault = {bad, bad};
    CHECK(!verify_lemma1(fault, true).empty());

    std::mt19937_64 rng(20240819);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    long checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Polygon poly = obtest::random_convex_polygon(rng, 8);
        double A = (0.05 + 0.4 * unif(rng)) * poly.area();
        MapConfig cfg(poly, A);
        OrbitRecord orb = orbit(cfg, unif(rng), 50);
        std::vector<ChordRecord> marks = chord_marks(poly, orb);
        CHECK(verify_lemma1(marks, false).empty());
        checked += static_cast<long>(marks.size());
    }
    CHECK(checked >= 10000 - 1);
}

TEST_CASE("deformation_velocities: square ratios match the analytic constant") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.1);
    OrbitRecord orb = orbit(cfg, kUMinus / 4.0, 4);
    DeformationRecord rec = deformation_velocities(cfg, orb);
    REQUIRE(rec.velocities.size() == 4);
    for (size_t k = 0; k + 1 < rec.velocities.size(); ++k) {
        CHECK(rec.analytic_ratios[k] == doctest::Approx(kRatio).epsilon(1e-9));
        double fd_ratio = rec.velocities[k + 1] / rec.velocities[k];
        CHECK(std::abs(fd_ratio - rec.analytic_ratios[k]) <= 1e-5);
    }
    // all velocities share one sign
    for (double v : rec.velocities) CHECK(v * rec.velocities[0] > 0.0);
}

TEST_CASE("deformation_velocities: parallel step has ratio 1") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.45);
    OrbitRecord orb = orbit(cfg, 0.125, 2);
    DeformationRecord rec = deformation_velocities(cfg, orb);
    REQUIRE(!rec.analytic_ratios.empty());
    CHECK(rec.analytic_ratios[0] == doctest::Approx(1.0));
}

TEST_CASE("verify_lemma2: hyperbola constants under deformation") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.1);
    OrbitRecord orb = orbit(cfg, kUMinus / 4.0, 4);
    Lemma2Report rep = verify_lemma2(cfg, orb);
    CHECK(rep.pass);
    CHECK(rep.max_product_variation <= 1e-7);
    CHECK(rep.max_sum_variation <= 1e-7);

    // the constant itself: (a+d)(b+d') = 2A at the square corner, a+b = 1
    std::vector<ChordRecord> marks = chord_marks(sq, orb);
    CHECK((marks[0].a + marks[0].d) * (marks[0].b + marks[0].d_prime) ==
          doctest::Approx(0.2).epsilon(1e-9));
    CHECK(marks[1].a + marks[0].b == doctest::Approx(1.0).epsilon(1e-9));

    Polygon quad = obtest::lemma_quad();
    MapConfig qcfg(quad, 1.875);
    OrbitRecord qorb = orbit(qcfg, quad_top_s(quad), 2);
    Lemma2Report qrep = verify_lemma2(qcfg, qorb);
    CHECK(qrep.pass);
}

TEST_CASE("verify_lemma4: inequality and the same-side equality case") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.1);
    OrbitRecord orb = orbit(cfg, kUMinus / 4.0, 4);
    Lemma4Report vac = verify_lemma4(cfg, orb);
    CHECK(vac.checked == 0); // no -1 chords: vacuous pass
    CHECK(vac.violations == 0);

    Polygon quad = obtest::lemma_quad();
    MapConfig qcfg(quad, 1.875);
    OrbitRecord qorb = orbit(qcfg, quad_top_s(quad), 2);
    Lemma4Report rep = verify_lemma4(qcfg, qorb);
    CHECK(rep.checked == 1);
    CHECK(rep.violations == 0);
    CHECK(rep.equality_cases == 1); // next point returns to the top side
    CHECK(rep.same_side_confirmed);

    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Polygon poly = obtest::random_convex_polygon(rng, 8);
        double A = (0.05 + 0.4 * unif(rng)) * poly.area();
        MapConfig pcfg(poly, A);
        OrbitRecord porb = orbit(pcfg, unif(rng), 20);
        try {
            Lemma4Report r = verify_lemma4(pcfg, porb);
            CHECK(r.violations == 0);
        } catch (const VertexNonSmooth&) {
            // deformation window crossed a vertex preimage; skip the sample
        }
    }
}

TEST_CASE("return_derivative: reciprocal products at A=0.1") {
    Polygon sq = unit_square();
    MapConfig cfg(sq, 0.1);
    ReturnDerivative rep = return_derivative(cfg, 1, 4, boundary_point(sq, 0, kUPlus));
    ReturnDerivative att = return_derivative(cfg, 1, 4, boundary_point(sq, 0, kUMinus));
    CHECK(rep.product == doctest::Approx(46.9787).epsilon(1e-4));
    CHECK(att.product == doctest::Approx(0.021286).epsilon(1e-4));
    CHECK(rep.product * att.product == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.product > 1.0 + 1e-6);
    CHECK(att.product < 1.0 - 1e-6);
}

TEST_CASE("fake_orbit: closure, equal-area reduction, NoClosure") {
    Polygon sq = unit_square();

    OrbitRecord equal = fake_orbit(sq, {0.1, 0.1, 0.1, 0.1}, 1, {0.0, 1.0});
    CHECK(equal.lift_values.back() ==
          doctest::Approx(equal.lift_values.front() + 1.0).epsilon(1e-9));
    MapConfig cfg(sq, 0.1);
    OrbitRecord plain = orbit(cfg, equal.lift_values.front(), 4);
    for (size_t k = 0; k < equal.points.size(); ++k)
        CHECK(equal.lift_values[k] == doctest::Approx(plain.lift_values[k]).epsilon(1e-9));

    OrbitRecord mixed = fake_orbit(sq, {0.1, 0.12, 0.1, 0.12}, 1, {0.0, 1.0});
    CHECK(std::abs(mixed.lift_values.back() - mixed.lift_values.front() - 1.0) <= 1e-9);
    for (size_t k = 0; k + 1 < mixed.points.size(); ++k) {
        double want = (k % 2 == 0) ? 0.1 : 0.12;
        CHECK(cut_area(sq, mixed.points[k], mixed.points[k + 1]) ==
              doctest::Approx(want).epsilon(1e-9));
    }
    CHECK(std::abs(mixed.derivative_product - 1.0) > 1e-3);

    CHECK_THROWS_AS(fake_orbit(sq, {0.45, 0.45}, 1, {0.0, 1.0}), NoClosure);
    CHECK_THROWS_AS(fake_orbit(sq, {0.6, 0.1}, 1, {0.0, 1.0}), AreaOutOfRange);
}

TEST_CASE("property: chord mark collinearity on random orbits") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Polygon poly = obtest::random_convex_polygon(rng);
        double L = poly.perimeter();
        double A = (0.05 + 0.4 * unif(rng)) * poly.area();
        MapConfig cfg(poly, A);
        OrbitRecord orb = orbit(cfg, unif(rng), 20);
        for (const ChordRecord& c : chord_marks(poly, orb)) {
            if (c.sigma == 0 || c.flag != ChordFlag::Ok) continue;
            REQUIRE(c.Q.has_value());
            if (c.sigma == 1) {
                CHECK(std::abs(dist(c.from_pt.xy, *c.Q) - (c.a + c.d)) <= 1e-9 * L);
                CHECK(std::abs(dist(c.to_pt.xy, *c.Q) - (c.b + c.d_prime)) <= 1e-9 * L);
            } else {
                CHECK(c.d - c.a > 0.0);
                CHECK(c.d_prime - c.b > 0.0);
                CHECK(std::abs(dist(c.from_pt.xy, *c.Q) - (c.d - c.a)) <= 1e-9 * L);
                CHECK(std::abs(dist(c.to_pt.xy, *c.Q) - (c.d_prime - c.b)) <= 1e-9 * L);
            }
        }
    }
}
