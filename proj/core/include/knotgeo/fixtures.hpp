#pragma once

#include "knotgeo/geometry.hpp"

namespace knotgeo {
namespace fixtures {

// Polygonal trefoil sampled from
//   ((2 + cos 3u) cos 2u, (2 + cos 3u) sin 2u, sin 3u)
// at n equally spaced parameters.  n not divisible by 3 avoids exactly
// symmetric vertex placements.
PolyKnot trefoil(int n = 64);

// Unit square in the z = 0 plane: thickness 1, ropelength 4.
PolyKnot unit_square();

// Regular n-gon of circumradius `radius` in the z = 0 plane.
PolyKnot regular_polygon(int n, double radius = 1.0);

// Figure-eight knot sampled from a standard parametrization.
PolyKnot figure_eight(int n = 32);

}  // namespace fixtures
}  // namespace knotgeo
