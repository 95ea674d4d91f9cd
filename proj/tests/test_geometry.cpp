#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "knotgeo/fixtures.hpp"
#include "knotgeo/geometry.hpp"

using namespace knotgeo;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::mt19937_64 rng(20240611ULL);
double urand(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}
Vec3 rand_vec(double lo = -1.0, double hi = 1.0) {
    return {urand(lo, hi), urand(lo, hi), urand(lo, hi)};
}

// Brute-force segment distance by dense parameter sampling, for cross-checks.
double brute_segment_distance(const Segment& a, const Segment& b, int n = 400) {
    double best = 1e300;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double d = distance(a.point_at(double(i) / n), b.point_at(double(j) / n));
            if (d < best) best = d;
        }
    return best;
}
}  // namespace

TEST_CASE("vector algebra basics") {
    Vec3 a{1, 2, 3}, b{-2, 0.5, 4};
    CHECK(dot(a, b) == doctest::Approx(-2 + 1 + 12));
    Vec3 c = cross(a, b);
    CHECK(dot(c, a) == doctest::Approx(0.0));
    CHECK(dot(c, b) == doctest::Approx(0.0));
    CHECK(Vec3{3, 4, 0}.norm() == doctest::Approx(5.0));
    CHECK(Vec3{0, 0, 2}.normalized().z == doctest::Approx(1.0));
    CHECK((a - a).norm() == 0.0);
}

TEST_CASE("segment point_at and length") {
    Segment s{{0, 0, 0}, {2, 0, 0}};
    CHECK(s.length() == doctest::Approx(2.0));
    Point3 mid = s.point_at(0.5);
    CHECK(mid.x == doctest::Approx(1.0));
    CHECK(mid.y == 0.0);
}

TEST_CASE("point_segment_distance clamps to endpoints") {
    Segment s{{0, 0, 0}, {1, 0, 0}};
    double t = -1;
    CHECK(point_segment_distance({0.5, 2, 0}, s, &t) == doctest::Approx(2.0));
    CHECK(t == doctest::Approx(0.5));
    CHECK(point_segment_distance({-3, 4, 0}, s, &t) == doctest::Approx(5.0));
    CHECK(t == 0.0);
    CHECK(point_segment_distance({2, 0, 0}, s, &t) == doctest::Approx(1.0));
    CHECK(t == 1.0);
}

TEST_CASE("segment_segment_distance known configurations") {
    // Skew perpendicular pair: closest points in the interiors.
    Segment a{{0, 0, 0}, {1, 0, 0}};
    Segment b{{0.5, -1, 2}, {0.5, 1, 2}};
    double s = -1, t = -1;
    CHECK(segment_segment_distance(a, b, &s, &t) == doctest::Approx(2.0));
    CHECK(s == doctest::Approx(0.5));
    CHECK(t == doctest::Approx(0.5));

    // Parallel overlapping at constant gap.
    Segment c{{0, 1, 0}, {1, 1, 0}};
    CHECK(segment_segment_distance(a, c) == doctest::Approx(1.0));

    // Intersecting segments have distance 0.
    Segment d{{0.5, -1, 0}, {0.5, 1, 0}};
    CHECK(segment_segment_distance(a, d) == doctest::Approx(0.0));

    // Endpoint-to-endpoint case.
    Segment e{{3, 0, 0}, {4, 0, 0}};
    CHECK(segment_segment_distance(a, e, &s, &t) == doctest::Approx(2.0));
    CHECK(s == 1.0);
    CHECK(t == 0.0);

    // Degenerate (zero-length) operands still work.
    Segment p{{0, 3, 0}, {0, 3, 0}};
    CHECK(segment_segment_distance(a, p) == doctest::Approx(3.0));
    CHECK(segment_segment_distance(p, p) == doctest::Approx(0.0));
}

TEST_CASE("segment_segment_distance matches brute force on random pairs") {
    for (int it = 0; it < 50; ++it) {
        Segment a{rand_vec(), rand_vec()};
        Segment b{rand_vec(), rand_vec()};
        double s = -1, t = -1;
        double d = segment_segment_distance(a, b, &s, &t);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
        CHECK(distance(a.point_at(s), b.point_at(t)) == doctest::Approx(d).epsilon(1e-12));
        // Dense sampling can only find a distance >= the true minimum.
        double bf = brute_segment_distance(a, b, 250);
        CHECK(d <= bf + 1e-12);
        CHECK(bf - d <= 1e-3);  // sampling resolution
    }
}

TEST_CASE("circumradius closed forms") {
    // Equilateral triangle with side 1: R = 1/sqrt(3).
    Point3 a{0, 0, 0}, b{1, 0, 0}, c{0.5, std::sqrt(3.0) / 2, 0};
    CHECK(circumradius(a, b, c) == doctest::Approx(1.0 / std::sqrt(3.0)));
    // Right triangle: hypotenuse / 2.
    CHECK(circumradius({0, 0, 0}, {3, 0, 0}, {0, 4, 0}) == doctest::Approx(2.5));
    // Collinear points: infinite radius.
    CHECK(std::isinf(circumradius({0, 0, 0}, {1, 0, 0}, {2, 0, 0})));
    // Coincident points are an error.
    CHECK_THROWS_AS(circumradius(a, a, c), GeometryError);
}

TEST_CASE("circumradius is invariant under permutation") {
    for (int it = 0; it < 20; ++it) {
        Point3 a = rand_vec(), b = rand_vec(), c = rand_vec();
        double r = circumradius(a, b, c);
        if (!std::isfinite(r)) continue;
        CHECK(circumradius(b, c, a) == doctest::Approx(r).epsilon(1e-12));
        CHECK(circumradius(c, b, a) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("polyknot construction validates input") {
    CHECK_THROWS_AS(PolyKnot({{0, 0, 0}, {1, 0, 0}}), GeometryError);
    CHECK_THROWS_AS(PolyKnot({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}), GeometryError);
    // Closing edge coincident with first vertex.
    CHECK_THROWS_AS(PolyKnot({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}), GeometryError);
    // Straight-back fold (anti-parallel consecutive edges).
    CHECK_THROWS_AS(PolyKnot({{0, 0, 0}, {2, 0, 0}, {1, 0, 0}, {0, 1, 0}}), GeometryError);
}

TEST_CASE("polyknot arclength bookkeeping on the unit square") {
    PolyKnot k = fixtures::unit_square();
    CHECK(k.size() == 4);
    CHECK(k.total_length() == doctest::Approx(4.0));
    CHECK(k.edge_length(0) == doctest::Approx(1.0));
    CHECK(k.vertex_arclength(2) == doctest::Approx(2.0));
    // Wrapped indexing.
    CHECK(distance(k.vertex(5), k.vertex(1)) == 0.0);
    CHECK(distance(k.vertex(-1), k.vertex(3)) == 0.0);
    CHECK(k.bounding_box_diagonal() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("position_at_arclength wraps and lands on vertices") {
    PolyKnot k = fixtures::unit_square();
    ArcPosition p = k.position_at_arclength(2.5);
    CHECK(p.edge == 2);
    CHECK(p.t == doctest::Approx(0.5));
    CHECK(p.s == doctest::Approx(2.5));

    // Exactly at a vertex: t = 0 of the outgoing edge.
    p = k.position_at_arclength(3.0);
    CHECK(p.edge == 3);
    CHECK(p.t == 0.0);

    // Wrapping in both directions.
    p = k.position_at_arclength(4.0);
    CHECK(p.edge == 0);
    CHECK(p.s == doctest::Approx(0.0));
    p = k.position_at_arclength(-0.5);
    CHECK(p.s == doctest::Approx(3.5));
    p = k.position_at_arclength(9.25);
    CHECK(p.s == doctest::Approx(1.25));
}

TEST_CASE("position_on_edge folds t=1 to the next edge") {
    PolyKnot k = fixtures::unit_square();
    ArcPosition p = k.position_on_edge(1, 1.0);
    CHECK(p.edge == 2);
    CHECK(p.t == 0.0);
    CHECK(p.s == doctest::Approx(2.0));
    p = k.position_on_edge(3, 1.0);  // wraps to edge 0
    CHECK(p.edge == 0);
    CHECK(p.s == doctest::Approx(0.0));
    CHECK_THROWS_AS(k.position_on_edge(0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(k.position_on_edge(0, -0.5), std::invalid_argument);
}

TEST_CASE("point_at agrees with arclength parametrization") {
    PolyKnot k = fixtures::regular_polygon(7, 2.0);
    double L = k.total_length();
    for (int i = 0; i < 40; ++i) {
        double s = urand(0, L);
        ArcPosition p = k.position_at_arclength(s);
        Point3 a = k.point_at(p);
        // Nudging s forward moves the point at unit rate.
        double h = 1e-6;
        ArcPosition q = k.position_at_arclength(s + h);
        Point3 b = k.point_at(q);
        CHECK(distance(a, b) == doctest::Approx(h).epsilon(1e-3));
    }
}

TEST_CASE("arc_length forward orientation and wrap") {
    PolyKnot k = fixtures::unit_square();
    ArcPosition u = k.position_at_arclength(0.5);
    ArcPosition v = k.position_at_arclength(3.0);
    CHECK(arc_length(k, u, v) == doctest::Approx(2.5));
    CHECK(arc_length(k, v, u) == doctest::Approx(1.5));
    CHECK(arc_length(k, u, u) == doctest::Approx(0.0));
}

TEST_CASE("angle_at and turning_angle") {
    CHECK(angle_at({1, 0, 0}, {0, 0, 0}, {0, 1, 0}) == doctest::Approx(kPi / 2));
    CHECK(angle_at({1, 0, 0}, {0, 0, 0}, {-1, 0, 0}) == doctest::Approx(kPi));
    CHECK(angle_at({1, 0, 0}, {0, 0, 0}, {2, 0, 0}) == doctest::Approx(0.0));

    PolyKnot sq = fixtures::unit_square();
    for (int i = 0; i < 4; ++i)
        CHECK(turning_angle(sq, i) == doctest::Approx(kPi / 2));

    PolyKnot hex = fixtures::regular_polygon(6);
    for (int i = 0; i < 6; ++i)
        CHECK(turning_angle(hex, i) == doctest::Approx(kPi / 3));
}

TEST_CASE("rotation about axis is special orthogonal") {
    Rotation r = Rotation::about_axis({1, 2, -0.5}, 1.234);
    CHECK(r.is_special_orthogonal());
    // Rotation preserves lengths and the axis.
    Vec3 axis = Vec3{1, 2, -0.5}.normalized();
    CHECK(distance(r.apply(axis), axis) == doctest::Approx(0.0).epsilon(1e-12));
    Vec3 v = rand_vec();
    CHECK(r.apply(v).norm() == doctest::Approx(v.norm()).epsilon(1e-12));

    // Quarter turn about z maps x to y.
    Rotation q = Rotation::about_axis({0, 0, 1}, kPi / 2);
    Vec3 w = q.apply({1, 0, 0});
    CHECK(w.x == doctest::Approx(0.0));
    CHECK(w.y == doctest::Approx(1.0));
}

TEST_CASE("similarity_transform scales lengths and validates input") {
    PolyKnot k = fixtures::trefoil(24);
    Rotation r = Rotation::about_axis({0.3, -1, 0.2}, 0.7);
    PolyKnot k2 = similarity_transform(k, r, 2.5, {1, -2, 3});
    CHECK(k2.total_length() == doctest::Approx(2.5 * k.total_length()).epsilon(1e-12));
    CHECK(k2.size() == k.size());

    CHECK_THROWS_AS(similarity_transform(k, r, 0.0, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(similarity_transform(k, r, -1.0, {0, 0, 0}), std::invalid_argument);
    Rotation bad;  // tamper with a row to break orthogonality
    bad.m[0][0] = 2.0;
    CHECK_THROWS_AS(similarity_transform(k, bad, 1.0, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("fixtures have expected sizes and closures") {
    CHECK(fixtures::trefoil().size() == 64);
    CHECK(fixtures::unit_square().size() == 4);
    CHECK(fixtures::regular_polygon(20).size() == 20);
    CHECK(fixtures::figure_eight().size() == 32);
    CHECK_THROWS_AS(fixtures::regular_polygon(2), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::trefoil(4), std::invalid_argument);

    // Regular polygon has the right circumradius at each vertex.
    PolyKnot p = fixtures::regular_polygon(9, 3.0);
    for (int i = 0; i < 9; ++i)
        CHECK(p.vertex(i).norm() == doctest::Approx(3.0));
}
