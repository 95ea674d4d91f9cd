#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotgeo {

// Geometric degeneracy (non-embedded curve, degenerate input, ...) as opposed
// to file-format problems, which raise KnotParseError in knot_io.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }
inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

using Point3 = Vec3;

struct Segment {
    Point3 start, end;

    Vec3 delta() const { return end - start; }
    double length() const { return delta().norm(); }
    Point3 point_at(double t) const { return start + delta() * t; }
};

// Distance between closed segments; optionally reports the minimizing
// parameters on each segment.
double segment_segment_distance(const Segment& a, const Segment& b,
                                double* s_out = nullptr, double* t_out = nullptr);

// Distance from a point to a closed segment, with optional foot parameter.
double point_segment_distance(const Point3& p, const Segment& seg,
                              double* t_out = nullptr);

// Location on a closed polygon: edge index, local parameter t in [0,1), and
// the global arclength coordinate s.  A vertex is always addressed as t = 0
// of the edge that leaves it.
struct ArcPosition {
    int edge = 0;
    double t = 0.0;
    double s = 0.0;
};

// Closed polygonal curve.  Vertices are in traversal order; the edge i runs
// from vertex i to vertex i+1 (mod n).
class PolyKnot {
public:
    explicit PolyKnot(std::vector<Point3> vertices);

    int size() const { return static_cast<int>(verts_.size()); }
    const std::vector<Point3>& vertices() const { return verts_; }
    const Point3& vertex(int i) const { return verts_[wrap(i)]; }
    Segment edge(int i) const {
        int j = wrap(i);
        return {verts_[j], verts_[wrap(j + 1)]};
    }
    double edge_length(int i) const { return cum_[wrap(i) + 1] - cum_[wrap(i)]; }
    double total_length() const { return cum_.back(); }
    // Arclength coordinate of vertex i.
    double vertex_arclength(int i) const { return cum_[wrap(i)]; }

    // Wraps s into [0, L) and locates it.  s exactly at a vertex yields t = 0
    // on the outgoing edge.
    ArcPosition position_at_arclength(double s) const;
    // Builds a normalized position from an edge index and local parameter in
    // [0,1]; t = 1 is folded to t = 0 of the next edge.
    ArcPosition position_on_edge(int edge, double t) const;
    Point3 point_at(const ArcPosition& p) const {
        return edge(p.edge).point_at(p.t);
    }

    double bounding_box_diagonal() const { return bbox_diag_; }

private:
    int wrap(int i) const {
        int n = size();
        int r = i % n;
        return r < 0 ? r + n : r;
    }

    std::vector<Point3> verts_;
    std::vector<double> cum_;  // cum_[i] = arclength at vertex i, cum_[n] = total
    double bbox_diag_ = 0.0;
};

// Radius of the circle through three points.  Collinear triples give +inf;
// coincident points are an error.
double circumradius(const Point3& a, const Point3& b, const Point3& c);

// Arclength of the arc from u to v in traversal direction, in [0, L).
double arc_length(const PolyKnot& k, const ArcPosition& u, const ArcPosition& v);

// Angle at apex p subtended by a and b, in [0, pi].
double angle_at(const Point3& a, const Point3& p, const Point3& b);

// Turning angle at vertex i (angle between incoming and outgoing edge
// directions), in [0, pi].
double turning_angle(const PolyKnot& k, int i);

struct Rotation {
    // Row-major 3x3 matrix.
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static Rotation identity() { return {}; }
    static Rotation about_axis(const Vec3& axis, double angle);

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    // True when the matrix is orthogonal with determinant +1 (up to tol).
    bool is_special_orthogonal(double tol = 1e-9) const;
};

// x -> scale * R x + translation applied to every vertex.  Requires
// scale > 0 and a proper rotation.
PolyKnot similarity_transform(const PolyKnot& k, const Rotation& rot,
                              double scale, const Vec3& translation);

}  // namespace knotgeo
