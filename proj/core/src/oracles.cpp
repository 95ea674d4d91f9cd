#include "knotgeo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace knotgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Points on the boundary circle are allowed: only the open ball is blocked.
constexpr double kBoundarySlack = 1e-12;

struct Edge {
    int to;
    double w;
};

double dijkstra(const std::vector<std::vector<Edge>>& adj, int src, int dst) {
    std::vector<double> dist(adj.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == dst) return d;
        for (const Edge& e : adj[u]) {
            if (d + e.w < dist[e.to]) {
                dist[e.to] = d + e.w;
                pq.push({dist[e.to], e.to});
            }
        }
    }
    return dist[dst];
}

// Angle of p around center, in [0, 2*pi).
double polar_angle(const Point3& p, const Point3& center) {
    double a = std::atan2(p.y - center.y, p.x - center.x);
    return a < 0.0 ? a + 2.0 * kPi : a;
}

}  // namespace

void OracleConfig::validate() const {
    if (circle_discretization < 16)
        throw std::invalid_argument("circle_discretization must be >= 16");
    if (sampler_resolution < 8)
        throw std::invalid_argument("sampler_resolution must be >= 8");
}

double shortest_path_avoiding_ball_oracle(double r, double s, double theta,
                                          const OracleConfig& cfg) {
    cfg.validate();
    if (!(r >= 1.0) || !(s >= 1.0))
        throw std::domain_error("endpoints must lie outside the unit ball");
    if (!(theta >= 0.0 && theta <= kPi + 1e-12))
        throw std::domain_error("theta must lie in [0, pi]");
    theta = std::min(theta, kPi);

    const Point3 origin{0.0, 0.0, 0.0};
    Point3 A{r, 0.0, 0.0};
    Point3 B{s * std::cos(theta), s * std::sin(theta), 0.0};
    auto clear = [&](const Point3& p, const Point3& q) {
        return point_segment_distance(origin, {p, q}) >= 1.0 - kBoundarySlack;
    };

    int N = cfg.circle_discretization;
    // Node 0 = A, node 1 = B, nodes 2..N+1 = circle samples.  Consecutive
    // circle nodes are joined by the exact boundary arc, not its chord, so
    // the only discretization error is in the tangent attachment points.
    std::vector<Point3> nodes(N + 2);
    nodes[0] = A;
    nodes[1] = B;
    for (int k = 0; k < N; ++k) {
        double phi = 2.0 * kPi * k / N;
        nodes[2 + k] = {std::cos(phi), std::sin(phi), 0.0};
    }

    std::vector<std::vector<Edge>> adj(nodes.size());
    auto link = [&](int u, int v, double w) {
        adj[u].push_back({v, w});
        adj[v].push_back({u, w});
    };
    if (clear(A, B)) link(0, 1, distance(A, B));
    for (int k = 0; k < N; ++k) {
        const Point3& c = nodes[2 + k];
        if (clear(A, c)) link(0, 2 + k, distance(A, c));
        if (clear(B, c)) link(1, 2 + k, distance(B, c));
        link(2 + k, 2 + (k + 1) % N, 2.0 * kPi / N);
    }
    // An endpoint on the circle itself can only leave along the boundary;
    // chords to nearby grid nodes all dip inside.  Attach it to its grid
    // neighbors by exact arcs.
    double h = 2.0 * kPi / N;
    auto attach_on_circle = [&](int node, double rad) {
        if (std::fabs(rad - 1.0) > 1e-9) return;
        double ang = polar_angle(nodes[node], origin);
        int k0 = static_cast<int>(std::floor(ang / h)) % N;
        int k1 = (k0 + 1) % N;
        link(node, 2 + k0, ang - k0 * h);
        link(node, 2 + k1, (k0 + 1) * h - ang);
    };
    attach_on_circle(0, r);
    attach_on_circle(1, s);
    return dijkstra(adj, 0, 1);
}

double two_ball_path_oracle(double r, double sep, double t,
                            const OracleConfig& cfg) {
    cfg.validate();
    if (!(r >= 1.0) || !(t >= 1.0))
        throw std::domain_error("endpoints must lie outside their unit balls");
    if (!(sep >= 0.0)) throw std::domain_error("center separation must be >= 0");

    const Point3 cb{0.0, 0.0, 0.0}, cc{sep, 0.0, 0.0};
    const Point3 A{-r, 0.0, 0.0}, D{sep + t, 0.0, 0.0};
    int N = cfg.circle_discretization;

    // Node layout: 0 = A, 1 = D, 2..N+1 circle around cb, N+2..2N+1 circle
    // around cc.  Circle nodes strictly inside the other open disk drop out.
    int nb = 2, nc = 2 + N;
    int total = 2 + 2 * N;
    std::vector<Point3> nodes(total);
    std::vector<bool> alive(total, true);
    nodes[0] = A;
    nodes[1] = D;
    for (int k = 0; k < N; ++k) {
        double phi = 2.0 * kPi * k / N;
        Point3 pb = cb + Vec3{std::cos(phi), std::sin(phi), 0.0};
        Point3 pc = cc + Vec3{std::cos(phi), std::sin(phi), 0.0};
        nodes[nb + k] = pb;
        nodes[nc + k] = pc;
        if (distance(pb, cc) < 1.0 - kBoundarySlack) alive[nb + k] = false;
        if (distance(pc, cb) < 1.0 - kBoundarySlack) alive[nc + k] = false;
    }

    auto clear = [&](const Point3& p, const Point3& q) {
        Segment s{p, q};
        return point_segment_distance(cb, s) >= 1.0 - kBoundarySlack &&
               point_segment_distance(cc, s) >= 1.0 - kBoundarySlack;
    };
    auto arc_ok = [&](int circle, int k) {
        // Arc from sample k to k+1 on the given circle; the midpoint test
        // rejects boundary arcs dipping into the other open disk.
        int u = (circle == 0 ? nb : nc) + k;
        int v = (circle == 0 ? nb : nc) + (k + 1) % N;
        if (!alive[u] || !alive[v]) return false;
        double phi = 2.0 * kPi * (k + 0.5) / N;
        Point3 mid = (circle == 0 ? cb : cc) + Vec3{std::cos(phi), std::sin(phi), 0.0};
        const Point3& other = circle == 0 ? cc : cb;
        return distance(mid, other) >= 1.0 - kBoundarySlack;
    };

    // Endpoints sitting exactly on their circle (r or t equal to 1) cannot
    // reach grid nodes by chords: every chord dips inside.  Attach them to
    // their grid neighbors with exact boundary arcs.
    double h = 2.0 * kPi / N;
    std::vector<std::vector<Edge>> extra(total);
    auto attach_on_circle = [&](int node, const Point3& center, double rad, int base) {
        if (std::fabs(rad - 1.0) > 1e-9) return;
        double ang = polar_angle(nodes[node], center);
        int k0 = static_cast<int>(std::floor(ang / h)) % N;
        int k1 = (k0 + 1) % N;
        for (auto [g, w] : {std::pair<int, double>{base + k0, ang - k0 * h},
                            std::pair<int, double>{base + k1, (k0 + 1) * h - ang}}) {
            if (!alive[g]) continue;
            extra[node].push_back({g, w});
            extra[g].push_back({node, w});
        }
    };
    attach_on_circle(0, cb, r, nb);
    attach_on_circle(1, cc, t, nc);

    // The cross-chord set is quadratic in N; generate neighbors lazily
    // instead of materializing the graph.
    std::vector<double> dist(total, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[0] = 0.0;
    pq.push({0.0, 0});

    auto relax = [&](int v, double nd) {
        if (nd < dist[v]) {
            dist[v] = nd;
            pq.push({nd, v});
        }
    };

    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == 1) return d;
        const Point3& pu = nodes[u];

        for (const Edge& e : extra[u]) relax(e.to, d + e.w);

        if (u == 0 || u == 1) {
            int peer = 1 - u;
            if (clear(pu, nodes[peer])) relax(peer, d + distance(pu, nodes[peer]));
            for (int v = 2; v < total; ++v)
                if (alive[v] && clear(pu, nodes[v])) relax(v, d + distance(pu, nodes[v]));
            continue;
        }

        int circle = u < nc ? 0 : 1;
        int k = circle == 0 ? u - nb : u - nc;
        if (arc_ok(circle, k)) relax((circle == 0 ? nb : nc) + (k + 1) % N, d + 2.0 * kPi / N);
        if (arc_ok(circle, (k + N - 1) % N))
            relax((circle == 0 ? nb : nc) + (k + N - 1) % N, d + 2.0 * kPi / N);
        for (int endpoint = 0; endpoint < 2; ++endpoint)
            if (clear(pu, nodes[endpoint])) relax(endpoint, d + distance(pu, nodes[endpoint]));

        // Chords to the other circle.  A chord leaving a boundary point
        // inward re-enters the open disk immediately, so a cheap outward
        // half-space test prunes most pairs before the full clearance check.
        const Point3& own_center = circle == 0 ? cb : cc;
        int other_base = circle == 0 ? nc : nb;
        Vec3 out_u = pu - own_center;
        for (int j = 0; j < N; ++j) {
            int v = other_base + j;
            if (!alive[v]) continue;
            const Point3& pv = nodes[v];
            Vec3 dv = pv - pu;
            if (dot(dv, out_u) < -1e-12) continue;
            if (clear(pu, pv)) relax(v, d + dv.norm());
        }
    }
    return dist[1];
}

namespace {

// Distance from the line through p with unit direction u to a segment.
double line_segment_distance(const Point3& p, const Vec3& u, const Segment& seg,
                             double* t_out = nullptr) {
    Vec3 a = cross(seg.start - p, u);
    Vec3 b = cross(seg.delta(), u);
    double bb = b.norm2();
    double t = bb > 0.0 ? std::clamp(-dot(a, b) / bb, 0.0, 1.0) : 0.0;
    if (t_out) *t_out = t;
    return (a + b * t).norm();
}

double point_line_distance(const Point3& q, const Point3& p, const Vec3& u) {
    return cross(q - p, u).norm();
}

struct SideFn {
    // Pluecker side product against a support line (unit direction).
    Vec3 d, m;
    double operator()(const Vec3& dx, const Vec3& mx) const {
        return dot(dx, m) + dot(d, mx);
    }
};

}  // namespace

std::vector<TransversalHit> sampled_transversals(const Segment& s1, const Segment& s2,
                                                 const Segment& s3, const Segment& s4,
                                                 const OracleConfig& cfg) {
    cfg.validate();
    Point3 lo = s1.start, hi = s1.start;
    Vec3 centroid{};
    for (const Segment& s : {s1, s2, s3, s4}) {
        for (const Point3& p : {s.start, s.end}) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
            centroid += p;
        }
    }
    centroid *= 1.0 / 8.0;
    double scale = distance(lo, hi);
    if (scale == 0.0) throw GeometryError("sampler needs segments of positive extent");
    // Work in a centered frame so the Pluecker moments stay well scaled.
    auto shift = [&](const Segment& s) {
        return Segment{s.start - centroid, s.end - centroid};
    };
    const Segment ls1 = shift(s1), ls2 = shift(s2), ls3 = shift(s3), ls4 = shift(s4);
    for (const Segment& s : {ls1, ls2, ls3, ls4})
        if (s.length() == 0.0) throw GeometryError("sampler needs non-degenerate segments");

    SideFn side3{ls3.delta().normalized(), cross(ls3.start, ls3.delta().normalized())};
    SideFn side4{ls4.delta().normalized(), cross(ls4.start, ls4.delta().normalized())};

    // Signed side products of the line through s1(u), s2(v) with the two
    // support lines; roots of both are transversal candidates.
    auto sigma = [&](double u, double v, const SideFn& fn, bool* ok) {
        Point3 p = ls1.point_at(u), q = ls2.point_at(v);
        Vec3 d = q - p;
        double dn = d.norm();
        if (dn < 1e-12 * scale) {
            *ok = false;
            return 0.0;
        }
        *ok = true;
        d = d / dn;
        return fn(d, cross(p, d));
    };
    auto line_dist = [&](double u, double v, const Segment& target) {
        Point3 p = ls1.point_at(u), q = ls2.point_at(v);
        Vec3 d = q - p;
        double dn = d.norm();
        if (dn < 1e-12 * scale) return kInf;
        return line_segment_distance(p, d / dn, target);
    };
    auto badness = [&](double u, double v) {
        return std::max(line_dist(u, v, ls3), line_dist(u, v, ls4));
    };

    int R = cfg.sampler_resolution;
    double thresh = 4.0 * scale / R;
    std::vector<uint8_t> hit((R + 1) * (R + 1), 0);
    std::vector<double> score((R + 1) * (R + 1), kInf);
    auto idx = [R](int iu, int iv) { return iu * (R + 1) + iv; };
    for (int iu = 0; iu <= R; ++iu) {
        double u = static_cast<double>(iu) / R;
        for (int iv = 0; iv <= R; ++iv) {
            double v = static_cast<double>(iv) / R;
            double b = badness(u, v);
            score[idx(iu, iv)] = b;
            hit[idx(iu, iv)] = b < thresh;
        }
    }

    // Flood-fill clusters (8-connected) and keep each cluster's best cell.
    std::vector<std::pair<int, int>> reps;
    std::vector<uint8_t> seen((R + 1) * (R + 1), 0);
    std::vector<std::pair<int, int>> stack;
    for (int iu = 0; iu <= R; ++iu) {
        for (int iv = 0; iv <= R; ++iv) {
            if (!hit[idx(iu, iv)] || seen[idx(iu, iv)]) continue;
            stack.assign(1, {iu, iv});
            seen[idx(iu, iv)] = 1;
            std::pair<int, int> best{iu, iv};
            while (!stack.empty()) {
                auto [cu, cv] = stack.back();
                stack.pop_back();
                if (score[idx(cu, cv)] < score[idx(best.first, best.second)])
                    best = {cu, cv};
                for (int du = -1; du <= 1; ++du) {
                    for (int dv = -1; dv <= 1; ++dv) {
                        int nu = cu + du, nv = cv + dv;
                        if (nu < 0 || nv < 0 || nu > R || nv > R) continue;
                        if (!hit[idx(nu, nv)] || seen[idx(nu, nv)]) continue;
                        seen[idx(nu, nv)] = 1;
                        stack.push_back({nu, nv});
                    }
                }
            }
            reps.push_back(best);
        }
    }

    // Nested bisection: for fixed u, find v with sigma3 = 0, then drive
    // sigma4(u, v(u)) to zero in u.
    auto v_of_u = [&](double u, double vlo, double vhi) {
        const int J = 24;
        bool ok = false;
        double prev_v = vlo, prev_s = sigma(u, vlo, side3, &ok);
        if (!ok) return std::nan("");
        for (int j = 1; j <= J; ++j) {
            double v = vlo + (vhi - vlo) * j / J;
            double sv = sigma(u, v, side3, &ok);
            if (!ok) return std::nan("");
            if ((prev_s <= 0.0 && sv >= 0.0) || (prev_s >= 0.0 && sv <= 0.0)) {
                double a = prev_v, b = v, fa = prev_s;
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (a + b);
                    double fm = sigma(u, mid, side3, &ok);
                    if (!ok) return std::nan("");
                    if ((fa <= 0.0 && fm <= 0.0) || (fa >= 0.0 && fm >= 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                return 0.5 * (a + b);
            }
            prev_v = v;
            prev_s = sv;
        }
        return std::nan("");
    };

    auto refine_bisect = [&](double ulo, double uhi, double vlo, double vhi,
                             double* u_out, double* v_out) {
        const int J = 24;
        bool ok = false;
        double prev_u = std::nan(""), prev_psi = 0.0;
        for (int j = 0; j <= J; ++j) {
            double u = ulo + (uhi - ulo) * j / J;
            double v = v_of_u(u, vlo, vhi);
            if (std::isnan(v)) continue;
            double psi = sigma(u, v, side4, &ok);
            if (!ok) continue;
            if (!std::isnan(prev_u) &&
                ((prev_psi <= 0.0 && psi >= 0.0) || (prev_psi >= 0.0 && psi <= 0.0))) {
                double a = prev_u, b = u, fa = prev_psi;
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (a + b);
                    double vm = v_of_u(mid, vlo, vhi);
                    if (std::isnan(vm)) break;
                    double fm = sigma(mid, vm, side4, &ok);
                    if (!ok) break;
                    if ((fa <= 0.0 && fm <= 0.0) || (fa >= 0.0 && fm >= 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                *u_out = 0.5 * (a + b);
                *v_out = v_of_u(*u_out, vlo, vhi);
                return !std::isnan(*v_out);
            }
            prev_u = u;
            prev_psi = psi;
        }
        return false;
    };

    // Compass pattern search on the raw distance, for clusters where the
    // side products have no clean sign change (grazing configurations).
    auto refine_pattern = [&](double u0, double v0, double step,
                              double* u_out, double* v_out) {
        double u = u0, v = v0, b = badness(u, v);
        for (int round = 0; round < 200 && step > 1e-14; ++round) {
            bool moved = false;
            const double du[4] = {step, -step, 0.0, 0.0};
            const double dv[4] = {0.0, 0.0, step, -step};
            for (int d = 0; d < 4; ++d) {
                double nu = std::clamp(u + du[d], 0.0, 1.0);
                double nv = std::clamp(v + dv[d], 0.0, 1.0);
                double nb = badness(nu, nv);
                if (nb < b) {
                    u = nu;
                    v = nv;
                    b = nb;
                    moved = true;
                    break;
                }
            }
            if (!moved) step *= 0.5;
        }
        *u_out = u;
        *v_out = v;
    };

    std::vector<TransversalHit> out;
    for (auto [iu, iv] : reps) {
        double uc = static_cast<double>(iu) / R, vc = static_cast<double>(iv) / R;
        double w = 2.0 / R;
        double ulo = std::max(0.0, uc - w), uhi = std::min(1.0, uc + w);
        double vlo = std::max(0.0, vc - w), vhi = std::min(1.0, vc + w);

        double u = 0.0, v = 0.0;
        if (!refine_bisect(ulo, uhi, vlo, vhi, &u, &v))
            refine_pattern(uc, vc, 1.0 / R, &u, &v);

        Point3 p = ls1.point_at(u), q = ls2.point_at(v);
        Vec3 d = q - p;
        if (d.norm() < 1e-12 * scale) continue;
        Vec3 dir = d.normalized();

        double t3 = 0.0, t4 = 0.0;
        double d3 = line_segment_distance(p, dir, ls3, &t3);
        double d4 = line_segment_distance(p, dir, ls4, &t4);
        if (std::max(d3, d4) > 1e-9) continue;

        TransversalHit hit_rec;
        if (dir.x < 0.0 || (dir.x == 0.0 && (dir.y < 0.0 || (dir.y == 0.0 && dir.z < 0.0))))
            dir = -dir;
        Point3 pw = p + centroid;
        hit_rec.line.direction = dir;
        hit_rec.line.point = pw - dir * dot(pw, dir);
        hit_rec.params = {u, v, t3, t4};

        bool dup = false;
        for (const TransversalHit& prev : out) {
            double ang = std::atan2(cross(prev.line.direction, dir).norm(),
                                    std::fabs(dot(prev.line.direction, dir)));
            double off = point_line_distance(hit_rec.line.point, prev.line.point,
                                             prev.line.direction);
            if (ang < 1e-6 && off < 1e-6 * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(hit_rec);
    }
    return out;
}

}  // namespace knotgeo
