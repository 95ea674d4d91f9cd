#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "knotgeo/geometry.hpp"
#include "knotgeo/quadrisecant.hpp"

namespace knotgeo {
namespace bounds {

// Length needed for a unit-thickness arc to escape the unit ball around one
// of its endpoints and reach distance r from the center:
// f(r) = sqrt(r^2 - 1) + arcsin(1/r).  Domain r >= 1.
double f_escape(double r);

// Minimum length of an essential arc whose endpoints are r apart:
// g(r) = 2*pi - 2*arcsin(r/2) for r <= 2, and pi beyond.  Domain r >= 0.
double g_essential(double r);

// Minimum length of an arc with endpoints at distances r and s from a unit
// ball's center, subtending angle theta, staying outside the open ball.
// Straight chord when the chord misses the ball, wrap-around otherwise.
double min_arc_avoiding_ball(double r, double s, double theta);

// Alias for g: an essential arc with endpoint distance d has length >= g(d).
double essential_arc_min_length(double d);

// Length bound for the long arc of a quadrisecant: f(r) + s + f(t).
double long_arc_bound(double r, double s, double t);

// Unconditional length floor implied by a quadrisecant of the given type on
// a unit-thickness curve: pi, 2*pi, 3*pi.
double quadrisecant_floor(OrderType type);

struct BoundCertificate {
    OrderType order_type;
    double r = 0.0, s = 0.0, t = 0.0;  // consecutive secant point distances
    bool essential_assumed = true;
    double lower_bound = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    bool preconditions_met = true;
    std::vector<std::string> violations;
};

// Ropelength lower bound from an essential quadrisecant with consecutive
// point spacings r, s, t on a unit-thickness knot.  Spacings below 1 violate
// the thickness precondition; they are clamped to 1 and flagged.
BoundCertificate essential_bound(OrderType type, double r, double s, double t);

struct MinimizationRecord {
    std::string objective;
    double argmin = 0.0;
    double min_value = 0.0;
    double lo = 0.0, hi = 0.0;  // search interval
    double tolerance = 0.0;     // argmin accuracy
};

// Minimizes the per-arc objectives that appear in the certificates over
// r in [1,4]: f, g+f, g+r, 2f+g+r.  Grid scan locates the global basin
// (2f+g+r has two local minima), golden section refines it.
std::vector<MinimizationRecord> minimize_bound_terms();

// Component-length bound for a link component crossed four times by a single
// line, from the pattern of components hit along the line.  Patterns are
// canonicalized up to reversal and relabeling.  Throws std::domain_error
// ("no bound known ...") for patterns like ABAB.
double link_component_bound(const std::array<char, 4>& labels);

// Total ropelength floor for a nonsplit link of k >= 2 components.
double nonsplit_link_bound(int k);

struct ArcInequality {
    std::string label;
    double value = 0.0;     // measured quantity (arc length or spacing)
    double required = 0.0;  // lower bound it must satisfy
    double margin = 0.0;    // value - required
    bool pass = false;
};

struct ArcInequalityReport {
    std::vector<ArcInequality> unconditional;  // hold for any quadrisecant
    std::vector<ArcInequality> essential;      // hold when the quadrisecant is essential
    bool unconditional_pass = true;
    bool essential_pass = true;
};

// Checks the per-arc length inequalities implied by a quadrisecant on a
// unit-thickness knot (|thickness - 1| <= 1e-6 required).  The knot
// orientation is chosen so the secant points appear in the canonical order
// for the quadrisecant's type.
ArcInequalityReport verify_arc_inequalities(const PolyKnot& unit_thickness_knot,
                                            const Quadrisecant& q);

}  // namespace bounds
}  // namespace knotgeo
