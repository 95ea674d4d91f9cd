#pragma once

#include "knotgeo/geometry.hpp"

namespace knotgeo {

struct MinRadResult {
    double value = 0.0;  // +inf for convex-free curves (no turning)
    int vertex = -1;     // vertex attaining the minimum
};

struct DcsdResult {
    double value = 0.0;  // +inf when no doubly-critical pair exists
    ArcPosition first, second;
};

struct ThicknessReport {
    double min_rad = 0.0;
    int min_rad_vertex = -1;
    double dcsd = 0.0;
    ArcPosition dcsd_first, dcsd_second;
    double thickness = 0.0;  // diameter convention: min(2*minRad, dcsd)
    double length = 0.0;
    double ropelength = 0.0;  // length / thickness
};

// Smallest local radius of curvature proxy: at each vertex i with turning
// angle theta_i, min(|e_{i-1}|, |e_i|) / (2 tan(theta_i / 2)).
MinRadResult min_rad(const PolyKnot& k);

// Doubly-critical self distance: the smallest |p - q| over pairs where the
// chord is perpendicular to the curve at interior points and satisfies the
// turning condition at vertices.  Throws GeometryError when non-adjacent
// edges intersect (curve not embedded).
DcsdResult dcsd(const PolyKnot& k);

ThicknessReport thickness_and_ropelength(const PolyKnot& k);

// Rescales about the origin so thickness becomes 1.
PolyKnot normalize_to_unit_thickness(const PolyKnot& k);

}  // namespace knotgeo
