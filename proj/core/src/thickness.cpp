#include "knotgeo/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace knotgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// tan(theta/2) for the angle between u and v, computed as
// |u x v| / (|u||v| + u.v).  Avoids the cancellation in 1 - cos(theta) for
// small angles and is exact for perpendicular integer-coordinate edges.
double tan_half_angle(const Vec3& u, const Vec3& v) {
    double denom = u.norm() * v.norm() + dot(u, v);
    double num = cross(u, v).norm();
    if (denom <= 0.0) return kInf;  // theta == pi (excluded by PolyKnot)
    return num / denom;
}

bool adjacent_edges(int i, int j, int n) {
    int d = std::abs(i - j);
    return d == 0 || d == 1 || d == n - 1;
}

bool adjacent_vertices(int i, int j, int n) {
    int d = std::abs(i - j);
    return d == 0 || d == 1 || d == n - 1;
}

// One-sided derivative signs of s -> |gamma(s) - q| at a vertex are
// proportional to dot(din, w) and dot(dout, w) for w = vertex - q.  The
// vertex is critical when the product is <= 0 (covers minima and maxima).
bool vertex_critical(const Vec3& w, const Vec3& din, const Vec3& dout) {
    double wn = w.norm();
    if (wn == 0.0) return false;
    double c1 = dot(w, din) / (wn * din.norm());
    double c2 = dot(w, dout) / (wn * dout.norm());
    return c1 * c2 <= 1e-12;
}

}  // namespace

MinRadResult min_rad(const PolyKnot& k) {
    int n = k.size();
    MinRadResult best{kInf, -1};
    for (int i = 0; i < n; ++i) {
        Vec3 d1 = k.edge(i - 1).delta();
        Vec3 d2 = k.edge(i).delta();
        double th = tan_half_angle(d1, d2);
        if (th <= 0.0) continue;  // straight vertex: no curvature constraint
        double r = std::min(k.edge_length(i - 1), k.edge_length(i)) / (2.0 * th);
        if (r < best.value) {
            best.value = r;
            best.vertex = i;
        }
    }
    return best;
}

DcsdResult dcsd(const PolyKnot& k) {
    int n = k.size();
    double diag = k.bounding_box_diagonal();
    double embed_tol = 1e-12 * diag;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (adjacent_edges(i, j, n)) continue;
            if (segment_segment_distance(k.edge(i), k.edge(j)) <= embed_tol)
                throw GeometryError("curve not embedded: edges " + std::to_string(i) +
                                    " and " + std::to_string(j) + " intersect");
        }
    }

    DcsdResult best{kInf, {}, {}};
    auto consider = [&](double d, const ArcPosition& a, const ArcPosition& b) {
        if (d < best.value) best = {d, a, b};
    };

    // Interior-interior pairs: feet of the common perpendicular of the two
    // edge lines, when both lie inside their segments.
    for (int i = 0; i < n; ++i) {
        Segment si = k.edge(i);
        Vec3 ei = si.delta();
        double A = ei.norm2();
        for (int j = i + 1; j < n; ++j) {
            if (adjacent_edges(i, j, n)) continue;
            Segment sj = k.edge(j);
            Vec3 ej = sj.delta();
            double E = ej.norm2();
            double B = dot(ei, ej);
            double D = A * E - B * B;
            if (D <= 1e-18 * A * E) {
                // Parallel edges: a whole interval of common perpendiculars;
                // take the midpoint of the parameter overlap.
                double ua = dot(sj.start - si.start, ei) / A;
                double ub = dot(sj.end - si.start, ei) / A;
                double lo = std::max(0.0, std::min(ua, ub));
                double hi = std::min(1.0, std::max(ua, ub));
                if (lo > hi) continue;
                double u = 0.5 * (lo + hi);
                Point3 p = si.point_at(u);
                double w = dot(p - sj.start, ej) / E;
                w = std::clamp(w, 0.0, 1.0);
                Point3 q = sj.point_at(w);
                consider(distance(p, q), k.position_on_edge(i, u),
                         k.position_on_edge(j, w));
                continue;
            }
            Vec3 d0 = si.start - sj.start;
            double C = dot(d0, ei), F = dot(d0, ej);
            double u = (B * F - C * E) / D;
            double w = (A * F - C * B) / D;
            if (u < -1e-12 || u > 1.0 + 1e-12 || w < -1e-12 || w > 1.0 + 1e-12)
                continue;
            u = std::clamp(u, 0.0, 1.0);
            w = std::clamp(w, 0.0, 1.0);
            consider(distance(si.point_at(u), sj.point_at(w)),
                     k.position_on_edge(i, u), k.position_on_edge(j, w));
        }
    }

    // Vertex-interior pairs: perpendicular foot on a non-incident edge plus
    // the turning condition at the vertex.
    for (int vi = 0; vi < n; ++vi) {
        Point3 v = k.vertex(vi);
        Vec3 din = v - k.vertex(vi - 1);
        Vec3 dout = k.vertex(vi + 1) - v;
        for (int j = 0; j < n; ++j) {
            if (j == vi || (j + 1) % n == vi) continue;  // edges touching vi
            Segment sj = k.edge(j);
            Vec3 ej = sj.delta();
            double w = dot(v - sj.start, ej) / ej.norm2();
            if (w < 0.0 || w > 1.0) continue;
            Point3 q = sj.point_at(w);
            Vec3 chord = v - q;
            if (chord.norm() <= embed_tol) continue;
            if (!vertex_critical(chord, din, dout)) continue;
            consider(chord.norm(), k.position_on_edge(vi, 0.0),
                     k.position_on_edge(j, w));
        }
    }

    // Vertex-vertex pairs: turning condition required at both ends.
    for (int vi = 0; vi < n; ++vi) {
        Point3 a = k.vertex(vi);
        Vec3 din_a = a - k.vertex(vi - 1);
        Vec3 dout_a = k.vertex(vi + 1) - a;
        for (int vj = vi + 1; vj < n; ++vj) {
            if (adjacent_vertices(vi, vj, n)) continue;
            Point3 b = k.vertex(vj);
            Vec3 w1 = a - b;
            if (w1.norm() <= embed_tol) continue;
            if (!vertex_critical(w1, din_a, dout_a)) continue;
            Vec3 din_b = b - k.vertex(vj - 1);
            Vec3 dout_b = k.vertex(vj + 1) - b;
            if (!vertex_critical(-w1, din_b, dout_b)) continue;
            consider(w1.norm(), k.position_on_edge(vi, 0.0),
                     k.position_on_edge(vj, 0.0));
        }
    }

    return best;
}

ThicknessReport thickness_and_ropelength(const PolyKnot& k) {
    MinRadResult mr = min_rad(k);
    DcsdResult dc = dcsd(k);
    ThicknessReport r;
    r.min_rad = mr.value;
    r.min_rad_vertex = mr.vertex;
    r.dcsd = dc.value;
    r.dcsd_first = dc.first;
    r.dcsd_second = dc.second;
    r.thickness = std::min(2.0 * mr.value, dc.value);
    r.length = k.total_length();
    r.ropelength = r.length / r.thickness;
    return r;
}

PolyKnot normalize_to_unit_thickness(const PolyKnot& k) {
    double tau = thickness_and_ropelength(k).thickness;
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw GeometryError("cannot normalize: thickness is not positive and finite");
    std::vector<Point3> verts;
    verts.reserve(k.vertices().size());
    for (const Point3& p : k.vertices()) verts.push_back(p / tau);
    return PolyKnot(std::move(verts));
}

}  // namespace knotgeo
