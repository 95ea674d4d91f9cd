#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "knotgeo/geometry.hpp"

namespace knotgeo {

// Cyclic order of the four secant points along the knot relative to their
// order along the line, up to rotation and reversal:
//   Simple      a b c d
//   Flipped     a b d c
//   Alternating a c b d
enum class OrderType { Simple, Flipped, Alternating };

enum class TrisecantClass { Direct, Reversed };

const char* to_string(OrderType t);
const char* to_string(TrisecantClass t);

struct TransversalLine {
    Point3 point;    // foot of the perpendicular from the origin
    Vec3 direction;  // unit, lexicographically positive
    // Pluecker coordinates (direction, point x direction).
    std::array<double, 6> plucker() const;
};

// A line meeting all four query segments, with its intersection parameters.
struct TransversalHit {
    TransversalLine line;
    std::array<double, 4> params;  // position on each segment, in [0,1]
};

struct TransversalResult {
    bool degenerate = false;  // infinitely many transversals (or rank loss)
    std::vector<TransversalHit> hits;
};

// All lines meeting four segments in general position: the 4x6 incidence
// system is solved for its 2-dimensional nullspace and intersected with the
// Klein quadric, giving at most two lines.  Rank loss or a vanishing
// quadratic reports Degenerate; a near-double root falls back to the sampled
// search and refines.
TransversalResult transversals_of_four_segments(const Segment& s1, const Segment& s2,
                                                const Segment& s3, const Segment& s4);

struct Quadrisecant {
    TransversalLine line;
    std::array<Point3, 4> points;         // in order along the line
    std::array<ArcPosition, 4> positions; // matching points
    std::array<double, 4> line_params;    // signed position along the line
    OrderType order_type;
    double r = 0.0, s = 0.0, t = 0.0;     // consecutive point distances
};

struct QuadrisecantScan {
    std::vector<Quadrisecant> quadrisecants;
    std::uint64_t degenerate_quadruples = 0;
    std::uint64_t dedup_merges = 0;
    std::uint64_t multi_secant_lines = 0;  // lines meeting the knot 5+ times
};

// Scans all non-adjacent edge quadruples for transversal lines.  Results are
// deduplicated (angle below 1e-6 rad and offset below 1e-6 of the bounding
// box diagonal merge), sorted canonically, and independent of num_threads
// (0 = hardware concurrency).  tol is the arclength slack for snapping hits
// to shared vertices.
QuadrisecantScan find_quadrisecants(const PolyKnot& k, double tol = 1e-9,
                                    int num_threads = 0);

// Cyclic order classification from knot arclength coordinates of points
// labeled by line order.  Coordinates must be pairwise distinct mod L.
OrderType classify_order(double sa, double sb, double sc, double sd, double L);

// Direct when b lies on the forward arc from a to c.
TrisecantClass classify_trisecant(double sa, double sb, double sc, double L);

// Chord between the two middle secant points.
Segment midsegment(const Quadrisecant& q);

}  // namespace knotgeo
