#include "doctest.h"

#include <random>

#include "ob/geometry.hpp"
#include "testutil.hpp"

using namespace ob;
using obtest::unit_square;

TEST_CASE("validate_polygon: unit square") {
    Polygon sq = unit_square();
    CHECK(sq.size() == 4);
    CHECK(sq.area() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq.perimeter() == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("validate_polygon: figure pentagon has area 3") {
    Polygon p = obtest::figure_pentagon();
    CHECK(p.size() == 5);
    CHECK(p.area() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("validate_polygon: clockwise input is reversed") {
    Polygon p = validate_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(p.area() == doctest::Approx(1.0));
    // counterclockwise after correction
    Vec2 e0 = p.vertex(1) - p.vertex(0);
    Vec2 e1 = p.vertex(2) - p.vertex(1);
    CHECK(cross(e0, e1) > 0.0);
}

TEST_CASE("validate_polygon: rejects degenerate input") {
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {1, 0}}), TooFewVertices);
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {1, 0}, {2, 0}, {2, 2}}), NonConvex);
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {0, 0}, {1, 1}}), DuplicateVertex);
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {2, 0}, {1, 1}, {1.5, 0.4}}), NonConvex);
}

TEST_CASE("point_at: square landmarks") {
    Polygon sq = unit_square();
    BoundaryPoint p0 = point_at(sq, 0.0);
    CHECK(p0.side == 0);
    CHECK(p0.t == 0.0);
    CHECK(p0.xy.x == doctest::Approx(0.0));

    BoundaryPoint p = point_at(sq, 0.375); // arc length 1.5
    CHECK(p.side == 1);
    CHECK(p.xy.x == doctest::Approx(1.0));
    CHECK(p.xy.y == doctest::Approx(0.5));

    BoundaryPoint a = point_at(sq, 1.25);
    BoundaryPoint b = point_at(sq, 0.25);
    CHECK(a.side == b.side);
    CHECK(a.t == doctest::Approx(b.t).epsilon(1e-15));
}

TEST_CASE("point_at: vertex canonicalization onto the outgoing side") {
    Polygon sq = unit_square();
    for (int v = 0; v < 4; ++v) {
        BoundaryPoint p = point_at(sq, sq.cumulative_arc(v) / sq.perimeter());
        CHECK(p.side == v);
        CHECK(p.t == 0.0);
    }
}

TEST_CASE("cut_area: square examples") {
    Polygon sq = unit_square();
    BoundaryPoint x = point_at(sq, 0.125);  // (0.5, 0)
    BoundaryPoint y = point_at(sq, 0.375);  // (1, 0.5)
    CHECK(cut_area(sq, x, y) == doctest::Approx(0.125).epsilon(1e-14));

    BoundaryPoint v3 = point_at(sq, 0.75);      // (0, 1)
    BoundaryPoint w = point_at(sq, 0.6 / 4.0);  // (0.6, 0)
    CHECK(cut_area(sq, v3, w) == doctest::Approx(0.3).epsilon(1e-14));

    CHECK(cut_area(sq, x, x) == 0.0);
}

TEST_CASE("side_line_intersection") {
    Polygon sq = unit_square();
    auto q01 = side_line_intersection(sq, 0, 1);
    REQUIRE(q01.has_value());
    CHECK(q01->x == doctest::Approx(1.0));
    CHECK(q01->y == doctest::Approx(0.0));
    CHECK(!side_line_intersection(sq, 0, 2).has_value());

    Polygon quad = obtest::lemma_quad();
    auto q02 = side_line_intersection(quad, 0, 2);
    REQUIRE(q02.has_value());
    CHECK(q02->x == doctest::Approx(8.0));
    CHECK(q02->y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("half_plane_sign") {
    CHECK(half_plane_sign({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(half_plane_sign({0, 0}, {1, 0}, {0.5, 0}) == 0);
    CHECK(half_plane_sign({0, 0}, {1, 0}, {0, -1}) == -1);
    CHECK_THROWS_AS(half_plane_sign({1, 1}, {1, 1}, {0, 0}), DegenerateChord);
}

TEST_CASE("property: cut_area complement and arc round-trip on random polygons") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Polygon poly = obtest::random_convex_polygon(rng);
        BoundaryPoint x = point_at(poly, unif(rng));
        BoundaryPoint y = point_at(poly, unif(rng));
        if (x.side == y.side && x.t == y.t) continue;
        double sum = cut_area(poly, x, y) + cut_area(poly, y, x);
        CHECK(sum == doctest::Approx(poly.area()).epsilon(1e-9));

        double s = unif(rng);
        BoundaryPoint p = point_at(poly, s);
        CHECK(arc_of(p) == doctest::Approx(s).epsilon(1e-12));
        BoundaryPoint back = point_at(poly, arc_of(p));
        CHECK(back.side == p.side);
        CHECK(back.t == doctest::Approx(p.t).epsilon(1e-12));
    }
}

TEST_CASE("property: cut_area is Lipschitz in the second argument") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Polygon poly = obtest::random_convex_polygon(rng);
    double diameter = 0.0;
    for (int i = 0; i < poly.size(); ++i)
        for (int j = 0; j < poly.size(); ++j)
            diameter = std::max(diameter, dist(poly.vertex(i), poly.vertex(j)));
    double x_s = unif(rng);
    BoundaryPoint x = point_at(poly, x_s);
    for (int i = 0; i < 200; ++i) {
        double s1 = unif(rng);
        double s2 = s1 + 1e-4 * unif(rng);
        double a1 = cut_area(poly, x, point_at(poly, s1));
        double a2 = cut_area(poly, x, point_at(poly, s2));
        double bound = poly.perimeter() * std::abs(s2 - s1) * diameter + 1e-12;
        if (std::abs(a2 - a1) > 0.5 * poly.area()) continue; // wrapped past x
        CHECK(std::abs(a2 - a1) <= bound);
    }
}
