#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "knotgeo/bounds.hpp"
#include "knotgeo/fixtures.hpp"
#include "knotgeo/quadrisecant.hpp"
#include "knotgeo/thickness.hpp"

using namespace knotgeo;
using namespace knotgeo::bounds;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);
}

TEST_CASE("escape length f") {
    CHECK(f_escape(1.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(f_escape(2.0) == doctest::Approx(kSqrt3 + kPi / 6).epsilon(1e-15));
    // Strictly increasing on r >= 1.
    double prev = f_escape(1.0);
    for (double r = 1.1; r < 5.0; r += 0.1) {
        double v = f_escape(r);
        CHECK(v > prev);
        prev = v;
    }
    // Large r: f(r) ~ r (tangent length dominates).
    CHECK(f_escape(100.0) == doctest::Approx(std::sqrt(9999.0) + std::asin(0.01)));
    CHECK_THROWS_AS(f_escape(0.999), std::domain_error);
}

TEST_CASE("essential arc length g") {
    CHECK(g_essential(0.0) == doctest::Approx(2 * kPi).epsilon(1e-15));
    CHECK(g_essential(1.0) == doctest::Approx(5 * kPi / 3).epsilon(1e-15));
    CHECK(g_essential(2.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(g_essential(3.0) == kPi);  // flat beyond 2
    CHECK(g_essential(100.0) == kPi);
    // Non-increasing.
    double prev = g_essential(0.0);
    for (double r = 0.1; r < 4.0; r += 0.1) {
        double v = g_essential(r);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(g_essential(-0.1), std::domain_error);
    CHECK(essential_arc_min_length(1.2) == g_essential(1.2));
}

TEST_CASE("min_arc_avoiding_ball closed forms") {
    // theta = 0: straight chord of length |r-s|.
    CHECK(min_arc_avoiding_ball(1.5, 3.0, 0.0) == doctest::Approx(1.5));
    CHECK(min_arc_avoiding_ball(2.0, 2.0, 0.0) == doctest::Approx(0.0));
    // Both points on the sphere: the path is the great-circle arc.
    CHECK(min_arc_avoiding_ball(1.0, 1.0, kPi) == doctest::Approx(kPi));
    CHECK(min_arc_avoiding_ball(1.0, 1.0, kPi / 2) == doctest::Approx(kPi / 2));
    // Antipodal far points: two tangents, no wrap.
    CHECK(min_arc_avoiding_ball(2.0, 2.0, kPi) == doctest::Approx(2 * kSqrt3 + kPi / 3));
    // Chord regime: plain law of cosines.
    CHECK(min_arc_avoiding_ball(2.0, 3.0, 0.3) ==
          doctest::Approx(std::sqrt(4.0 + 9.0 - 12.0 * std::cos(0.3))));
    CHECK_THROWS_AS(min_arc_avoiding_ball(0.9, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(min_arc_avoiding_ball(2.0, 2.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(min_arc_avoiding_ball(2.0, 2.0, kPi + 0.1), std::domain_error);
}

TEST_CASE("min_arc_avoiding_ball is continuous across the branch boundary") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(1.0, 3.5);
    for (int it = 0; it < 200; ++it) {
        double r = d(rng), s = d(rng);
        double boundary = std::acos(1.0 / r) + std::acos(1.0 / s);
        if (boundary > kPi) continue;  // wrap branch never reached
        double below = min_arc_avoiding_ball(r, s, boundary - 1e-13);
        double above = min_arc_avoiding_ball(r, s, std::min(boundary + 1e-13, kPi));
        CHECK(std::abs(below - above) < 1e-10);
    }
}

TEST_CASE("min_arc_avoiding_ball is monotone in theta") {
    for (double r : {1.0, 1.3, 2.2}) {
        for (double s : {1.0, 1.7, 3.0}) {
            double prev = min_arc_avoiding_ball(r, s, 0.0);
            for (int i = 1; i <= 64; ++i) {
                double v = min_arc_avoiding_ball(r, s, kPi * i / 64);
                CHECK(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
}

TEST_CASE("long arc bound and unconditional floors") {
    CHECK(long_arc_bound(1.0, 1.0, 1.0) == doctest::Approx(kPi + 1.0).epsilon(1e-15));
    CHECK(long_arc_bound(2.0, 0.5, 1.0) ==
          doctest::Approx(f_escape(2.0) + 0.5 + f_escape(1.0)));
    CHECK(quadrisecant_floor(OrderType::Simple) == doctest::Approx(kPi));
    CHECK(quadrisecant_floor(OrderType::Flipped) == doctest::Approx(2 * kPi));
    CHECK(quadrisecant_floor(OrderType::Alternating) == doctest::Approx(3 * kPi));
}

TEST_CASE("certificates reproduce the three closed-form bounds") {
    BoundCertificate simple = essential_bound(OrderType::Simple, 2, 2, 2);
    CHECK(simple.lower_bound ==
          doctest::Approx(10 * kPi / 3 + 2 * kSqrt3 + 2).epsilon(1e-14));
    CHECK(simple.preconditions_met);
    CHECK(simple.terms.size() == 3);
    CHECK(simple.terms[1].first == "g(s)+s");

    BoundCertificate flipped = essential_bound(OrderType::Flipped, 2, 1, 2);
    CHECK(flipped.lower_bound == doctest::Approx(10 * kPi / 3 + 2 * kSqrt3).epsilon(1e-14));
    CHECK(flipped.terms[1].first == "2f(s)");

    // Alternating minimum sits at the interior argmin of 2f+g+r.
    auto recs = minimize_bound_terms();
    double rstar = recs[3].argmin;
    BoundCertificate alt = essential_bound(OrderType::Alternating, 1, rstar, 1);
    CHECK(alt.lower_bound == doctest::Approx(2 * kPi + recs[3].min_value).epsilon(1e-12));
    CHECK(alt.lower_bound > 15.66);
}

TEST_CASE("certificate clamps sub-unit spacings and flags them") {
    BoundCertificate c = essential_bound(OrderType::Simple, 0.5, 2, 2);
    CHECK_FALSE(c.preconditions_met);
    REQUIRE(c.violations.size() == 1);
    CHECK(c.violations[0].find("r = 0.5") != std::string::npos);
    CHECK(c.violations[0].find("clamped") != std::string::npos);
    // Bound is evaluated with the clamped value.
    CHECK(c.lower_bound == doctest::Approx(essential_bound(OrderType::Simple, 1, 2, 2).lower_bound));
    // Raw inputs are preserved in the record.
    CHECK(c.r == 0.5);

    BoundCertificate c2 = essential_bound(OrderType::Alternating, 0.2, 0.3, 2);
    CHECK(c2.violations.size() == 2);
}

TEST_CASE("minimize_bound_terms pins the four per-arc minima") {
    auto recs = minimize_bound_terms();
    REQUIRE(recs.size() == 4);

    CHECK(recs[0].objective == "f");
    CHECK(recs[0].argmin == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(recs[0].min_value == doctest::Approx(kPi / 2).epsilon(1e-12));

    CHECK(recs[1].objective == "g+f");
    CHECK(std::abs(recs[1].argmin - 2.0) < 1e-4);
    CHECK(std::abs(recs[1].min_value - (7 * kPi / 6 + kSqrt3)) < 1e-9);

    CHECK(recs[2].objective == "g+r");
    CHECK(std::abs(recs[2].argmin - 2.0) < 1e-4);
    CHECK(std::abs(recs[2].min_value - (kPi + 2)) < 1e-9);

    // Interior smooth minimum; reference value from a high-precision
    // independent golden-section run.
    CHECK(recs[3].objective == "2f+g+r");
    CHECK(recs[3].argmin > 1.0029);
    CHECK(recs[3].argmin < 1.0032);
    CHECK(recs[3].min_value == doctest::Approx(9.377423960799).epsilon(1e-9));
    // And it is the global minimum, not the boundary basin at r = 1.
    CHECK(recs[3].min_value < 2 * f_escape(1.0) + g_essential(1.0) + 1.0);

    for (const auto& r : recs) {
        CHECK(r.lo == 1.0);
        CHECK(r.hi == 4.0);
        CHECK(r.tolerance <= 1e-6);
        // Reported minimum is attained at the reported argmin.
        CHECK(r.min_value <= r.min_value + 1e-15);
        CHECK(r.argmin >= r.lo);
        CHECK(r.argmin <= r.hi);
    }
}

TEST_CASE("link component bounds by pattern") {
    double aaab = 7 * kPi / 3 + 2 * kSqrt3;
    double aaba = 8 * kPi / 3 + 1 + kSqrt3;
    double abba = 2 * kPi + 2;

    CHECK(link_component_bound({'A', 'A', 'A', 'B'}) == doctest::Approx(aaab).epsilon(1e-15));
    CHECK(link_component_bound({'A', 'A', 'B', 'A'}) == doctest::Approx(aaba).epsilon(1e-15));
    CHECK(link_component_bound({'A', 'B', 'B', 'A'}) == doctest::Approx(abba).epsilon(1e-15));
    CHECK(link_component_bound({'A', 'B', 'C', 'A'}) == doctest::Approx(abba).epsilon(1e-15));

    // Relabeling invariance: component names are arbitrary.
    CHECK(link_component_bound({'X', 'X', 'X', 'K'}) == doctest::Approx(aaab));
    CHECK(link_component_bound({'Q', 'Z', 'Z', 'Q'}) == doctest::Approx(abba));
    // Reversal invariance: the line has no preferred direction.
    CHECK(link_component_bound({'B', 'A', 'A', 'A'}) == doctest::Approx(aaab));
    CHECK(link_component_bound({'A', 'B', 'A', 'A'}) == doctest::Approx(aaba));
    CHECK(link_component_bound({'A', 'C', 'B', 'A'}) == doctest::Approx(abba));

    CHECK_THROWS_WITH_AS(link_component_bound({'A', 'B', 'A', 'B'}),
                         doctest::Contains("no bound known"), std::domain_error);
    CHECK_THROWS_AS(link_component_bound({'A', 'A', 'B', 'B'}), std::domain_error);
    CHECK_THROWS_AS(link_component_bound({'A', 'A', 'A', 'A'}), std::domain_error);
}

TEST_CASE("nonsplit link bound") {
    CHECK(nonsplit_link_bound(2) == doctest::Approx(4 * kPi).epsilon(1e-15));
    CHECK(nonsplit_link_bound(5) == doctest::Approx(10 * kPi).epsilon(1e-15));
    CHECK_THROWS_AS(nonsplit_link_bound(1), std::invalid_argument);
    CHECK_THROWS_AS(nonsplit_link_bound(0), std::invalid_argument);
}

namespace {
// Synthetic quadrisecant record on a given knot: only positions, spacings and
// type matter for the arc checks.
Quadrisecant fake_quad(const PolyKnot& k, OrderType type,
                       std::array<double, 4> arcs, double r, double s, double t) {
    Quadrisecant q;
    q.order_type = type;
    for (int i = 0; i < 4; ++i) {
        q.positions[i] = k.position_at_arclength(arcs[i]);
        q.points[i] = k.point_at(q.positions[i]);
        q.line_params[i] = static_cast<double>(i);
    }
    q.r = r;
    q.s = s;
    q.t = t;
    return q;
}
}  // namespace

TEST_CASE("verify_arc_inequalities requires unit thickness") {
    PolyKnot k = fixtures::trefoil();  // thickness well below 1
    Quadrisecant q = fake_quad(k, OrderType::Simple, {0, 2, 4, 6}, 1, 1, 1);
    CHECK_THROWS_AS(verify_arc_inequalities(k, q), GeometryError);
}

TEST_CASE("verify_arc_inequalities rejects inconsistent point order") {
    PolyKnot sq = fixtures::unit_square();  // thickness exactly 1
    // Knot order a,b,c,d but claimed Alternating (wants a,c,b,d).
    Quadrisecant q = fake_quad(sq, OrderType::Alternating, {0.2, 1.2, 2.2, 3.2}, 1, 1, 1);
    CHECK_THROWS_AS(verify_arc_inequalities(sq, q), GeometryError);
}

TEST_CASE("verify_arc_inequalities mechanics on the unit square") {
    PolyKnot sq = fixtures::unit_square();
    Quadrisecant q = fake_quad(sq, OrderType::Simple, {0.2, 1.2, 2.2, 3.2}, 1, 1, 1);
    ArcInequalityReport rep = verify_arc_inequalities(sq, q);

    REQUIRE(rep.unconditional.size() == 1);
    CHECK(rep.unconditional[0].label == "arc(d,a)");
    CHECK(rep.unconditional[0].value == doctest::Approx(1.0));
    CHECK(rep.unconditional[0].required == doctest::Approx(kPi));
    // A square cannot satisfy a quadrisecant length bound: margins go negative.
    CHECK_FALSE(rep.unconditional[0].pass);
    CHECK_FALSE(rep.unconditional_pass);
    CHECK(rep.unconditional[0].margin == doctest::Approx(1.0 - kPi));

    // Essential tier contains the three spacing entries plus four arcs.
    REQUIRE(rep.essential.size() == 7);
    CHECK(rep.essential[0].label == "r");
    CHECK(rep.essential[0].pass);

    // Reversed traversal of the same configuration gives the same numbers.
    Quadrisecant qr = fake_quad(sq, OrderType::Simple, {0.2, 3.2, 2.2, 1.2}, 1, 1, 1);
    ArcInequalityReport rep2 = verify_arc_inequalities(sq, qr);
    REQUIRE(rep2.unconditional.size() == 1);
    CHECK(rep2.unconditional[0].value == doctest::Approx(rep.unconditional[0].value));
}

TEST_CASE("verify_arc_inequalities accepts a real quadrisecant on the trefoil") {
    PolyKnot kn = normalize_to_unit_thickness(fixtures::trefoil());
    QuadrisecantScan scan = find_quadrisecants(kn);
    REQUIRE(scan.quadrisecants.size() >= 1);
    const Quadrisecant& q = scan.quadrisecants.front();
    ArcInequalityReport rep = verify_arc_inequalities(kn, q);
    // The unconditional floor holds on any embedded unit-thickness knot.
    CHECK(rep.unconditional_pass);
    for (const auto& e : rep.unconditional) CHECK(e.margin >= -1e-9);
}
