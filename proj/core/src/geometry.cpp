#include "knotgeo/geometry.hpp"

#include <algorithm>
#include <limits>

namespace knotgeo {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

Vec3 Vec3::normalized() const {
    double n = norm();
    if (n == 0.0) throw GeometryError("cannot normalize a zero vector");
    return *this / n;
}

double point_segment_distance(const Point3& p, const Segment& seg, double* t_out) {
    Vec3 d = seg.delta();
    double dd = d.norm2();
    double t = 0.0;
    if (dd > 0.0) t = clamp01(dot(p - seg.start, d) / dd);
    if (t_out) *t_out = t;
    return distance(p, seg.point_at(t));
}

double segment_segment_distance(const Segment& a, const Segment& b,
                                double* s_out, double* t_out) {
    // Clamped closest-point computation on the quadratic |a(s) - b(t)|^2.
    Vec3 d1 = a.delta(), d2 = b.delta(), r = a.start - b.start;
    double A = d1.norm2(), E = d2.norm2();
    double C = dot(d1, r), F = dot(d2, r);
    double s = 0.0, t = 0.0;

    if (A == 0.0 && E == 0.0) {
        // Both degenerate to points.
    } else if (A == 0.0) {
        t = clamp01(F / E);
    } else if (E == 0.0) {
        s = clamp01(-C / A);
    } else {
        double B = dot(d1, d2);
        double den = A * E - B * B;
        // den == 0 for parallel segments; any s works, start from 0.
        if (den > 0.0) s = clamp01((B * F - C * E) / den);
        t = (B * s + F) / E;
        if (t < 0.0) {
            t = 0.0;
            s = clamp01(-C / A);
        } else if (t > 1.0) {
            t = 1.0;
            s = clamp01((B - C) / A);
        }
    }
    if (s_out) *s_out = s;
    if (t_out) *t_out = t;
    return distance(a.point_at(s), b.point_at(t));
}

PolyKnot::PolyKnot(std::vector<Point3> vertices) : verts_(std::move(vertices)) {
    int n = size();
    if (n < 3) throw GeometryError("a closed polygon needs at least 3 vertices");

    cum_.resize(n + 1);
    cum_[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        double len = distance(verts_[i], verts_[(i + 1) % n]);
        if (len == 0.0)
            throw GeometryError("consecutive vertices coincide at index " +
                                std::to_string(i));
        cum_[i + 1] = cum_[i] + len;
    }

    // Exact fold-backs make the turning angle pi and the curve non-embedded.
    for (int i = 0; i < n; ++i) {
        Vec3 din = (verts_[i] - verts_[(i + n - 1) % n]).normalized();
        Vec3 dout = (verts_[(i + 1) % n] - verts_[i]).normalized();
        if (dot(din, dout) < -1.0 + 1e-12)
            throw GeometryError("anti-parallel edges at vertex " + std::to_string(i));
    }

    Point3 lo = verts_[0], hi = verts_[0];
    for (const Point3& p : verts_) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    bbox_diag_ = distance(lo, hi);
}

ArcPosition PolyKnot::position_at_arclength(double s) const {
    double L = total_length();
    double w = std::fmod(s, L);
    if (w < 0.0) w += L;
    if (w >= L) w = 0.0;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), w);
    int e = static_cast<int>(it - cum_.begin()) - 1;
    e = std::min(std::max(e, 0), size() - 1);
    double t = (w - cum_[e]) / edge_length(e);
    return position_on_edge(e, t);
}

ArcPosition PolyKnot::position_on_edge(int edge, double t) const {
    int e = wrap(edge);
    if (t < -1e-12 || t > 1.0 + 1e-12)
        throw std::invalid_argument("edge parameter out of [0,1]");
    t = clamp01(t);
    if (t >= 1.0) {
        e = wrap(e + 1);
        t = 0.0;
    }
    double s = cum_[e] + t * edge_length(e);
    if (s >= total_length()) s -= total_length();
    return {e, t, s};
}

double circumradius(const Point3& a, const Point3& b, const Point3& c) {
    Vec3 ab = b - a, ac = c - a, bc = c - b;
    double lab = ab.norm(), lac = ac.norm(), lbc = bc.norm();
    if (lab == 0.0 || lac == 0.0 || lbc == 0.0)
        throw GeometryError("circumradius of coincident points");
    double twice_area = cross(ab, ac).norm();
    if (twice_area == 0.0) return std::numeric_limits<double>::infinity();
    return (lab * lac * lbc) / (2.0 * twice_area);
}

double arc_length(const PolyKnot& k, const ArcPosition& u, const ArcPosition& v) {
    double L = k.total_length();
    double d = std::fmod(v.s - u.s, L);
    if (d < 0.0) d += L;
    return d;
}

double angle_at(const Point3& a, const Point3& p, const Point3& b) {
    Vec3 u = a - p, v = b - p;
    if (u.norm2() == 0.0 || v.norm2() == 0.0)
        throw GeometryError("angle at coincident points");
    return std::atan2(cross(u, v).norm(), dot(u, v));
}

double turning_angle(const PolyKnot& k, int i) {
    Vec3 d1 = k.edge(i - 1).delta();
    Vec3 d2 = k.edge(i).delta();
    return std::atan2(cross(d1, d2).norm(), dot(d1, d2));
}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
    Vec3 u = axis.normalized();
    double c = std::cos(angle), s = std::sin(angle), k = 1.0 - c;
    Rotation r;
    r.m[0][0] = c + u.x * u.x * k;
    r.m[0][1] = u.x * u.y * k - u.z * s;
    r.m[0][2] = u.x * u.z * k + u.y * s;
    r.m[1][0] = u.y * u.x * k + u.z * s;
    r.m[1][1] = c + u.y * u.y * k;
    r.m[1][2] = u.y * u.z * k - u.x * s;
    r.m[2][0] = u.z * u.x * k - u.y * s;
    r.m[2][1] = u.z * u.y * k + u.x * s;
    r.m[2][2] = c + u.z * u.z * k;
    return r;
}

bool Rotation::is_special_orthogonal(double tol) const {
    double max_err = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double dotij = 0.0;
            for (int k = 0; k < 3; ++k) dotij += m[k][i] * m[k][j];
            max_err = std::max(max_err, std::fabs(dotij - (i == j ? 1.0 : 0.0)));
        }
    }
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return max_err <= tol && std::fabs(det - 1.0) <= tol;
}

PolyKnot similarity_transform(const PolyKnot& k, const Rotation& rot,
                              double scale, const Vec3& translation) {
    if (!(scale > 0.0)) throw GeometryError("similarity scale must be positive");
    if (!rot.is_special_orthogonal())
        throw GeometryError("similarity rotation must be special orthogonal");
    std::vector<Point3> out;
    out.reserve(k.vertices().size());
    for (const Point3& p : k.vertices())
        out.push_back(rot.apply(p) * scale + translation);
    return PolyKnot(std::move(out));
}

}  // namespace knotgeo
