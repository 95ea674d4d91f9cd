#include "knotgeo/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knotgeo {
namespace fixtures {

namespace {
constexpr double kPi = std::numbers::pi;
}

PolyKnot trefoil(int n) {
    if (n < 8) throw std::invalid_argument("trefoil needs at least 8 vertices");
    std::vector<Point3> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        double u = 2.0 * kPi * k / n;
        double w = 2.0 + std::cos(3.0 * u);
        v.push_back({w * std::cos(2.0 * u), w * std::sin(2.0 * u), std::sin(3.0 * u)});
    }
    return PolyKnot(std::move(v));
}

PolyKnot unit_square() {
    return PolyKnot({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {0.0, 1.0, 0.0}});
}

PolyKnot regular_polygon(int n, double radius) {
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    if (!(radius > 0.0)) throw std::invalid_argument("polygon radius must be positive");
    std::vector<Point3> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        double a = 2.0 * kPi * k / n;
        v.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
    }
    return PolyKnot(std::move(v));
}

PolyKnot figure_eight(int n) {
    if (n < 16) throw std::invalid_argument("figure eight needs at least 16 vertices");
    std::vector<Point3> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        double u = 2.0 * kPi * k / n;
        v.push_back({(2.0 + std::cos(2.0 * u)) * std::cos(3.0 * u),
                     (2.0 + std::cos(2.0 * u)) * std::sin(3.0 * u),
                     std::sin(4.0 * u)});
    }
    return PolyKnot(std::move(v));
}

}  // namespace fixtures
}  // namespace knotgeo
