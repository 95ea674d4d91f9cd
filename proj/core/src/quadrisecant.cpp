#include "knotgeo/quadrisecant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "knotgeo/oracles.hpp"

namespace knotgeo {

namespace {

// A line with direction d through point p has Pluecker coordinates
// X = (d | m), m = p x d.  Two lines meet iff their side product
// d1.m2 + d2.m1 vanishes; X represents a real line iff d.m = 0 (the Klein
// quadric).  Transversals of four segment lines form the nullspace of the
// four side-product rows intersected with the quadric.

double klein(const double x[6]) {
    return x[0] * x[3] + x[1] * x[4] + x[2] * x[5];
}

double klein_bilinear(const double a[6], const double b[6]) {
    return 0.5 * (a[0] * b[3] + a[1] * b[4] + a[2] * b[5] +
                  b[0] * a[3] + b[1] * a[4] + b[2] * a[5]);
}

// Reduced row echelon with full pivoting; returns the rank and, when it is
// 4, two unit 6-vectors spanning the nullspace.
int nullspace_rank(double M[4][6], double basis[2][6]) {
    int piv_row_of_col[6];
    std::fill(piv_row_of_col, piv_row_of_col + 6, -1);
    bool row_used[4] = {};
    int rank = 0;

    for (int step = 0; step < 4; ++step) {
        double best = 1e-10;  // entries are O(1) in the normalized frame
        int br = -1, bc = -1;
        for (int r = 0; r < 4; ++r) {
            if (row_used[r]) continue;
            for (int c = 0; c < 6; ++c) {
                if (piv_row_of_col[c] >= 0) continue;
                if (std::fabs(M[r][c]) > best) {
                    best = std::fabs(M[r][c]);
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0) break;
        row_used[br] = true;
        piv_row_of_col[bc] = br;
        ++rank;
        double inv = 1.0 / M[br][bc];
        for (int c = 0; c < 6; ++c) M[br][c] *= inv;
        M[br][bc] = 1.0;
        for (int r = 0; r < 4; ++r) {
            if (r == br) continue;
            double f = M[r][bc];
            if (f == 0.0) continue;
            for (int c = 0; c < 6; ++c) M[r][c] -= f * M[br][c];
            M[r][bc] = 0.0;
        }
    }
    if (rank < 4) return rank;

    int free_cols[2], nf = 0;
    for (int c = 0; c < 6; ++c)
        if (piv_row_of_col[c] < 0) free_cols[nf++] = c;
    for (int b = 0; b < 2; ++b) {
        double* x = basis[b];
        std::fill(x, x + 6, 0.0);
        x[free_cols[b]] = 1.0;
        for (int c = 0; c < 6; ++c) {
            int r = piv_row_of_col[c];
            if (r >= 0) x[c] = -M[r][free_cols[b]];
        }
        double n = 0.0;
        for (int c = 0; c < 6; ++c) n += x[c] * x[c];
        n = std::sqrt(n);
        for (int c = 0; c < 6; ++c) x[c] /= n;
    }
    return 4;
}

Vec3 canonical_direction(Vec3 u) {
    if (u.x < 0.0 || (u.x == 0.0 && (u.y < 0.0 || (u.y == 0.0 && u.z < 0.0))))
        return -u;
    return u;
}

double line_angle(const Vec3& u, const Vec3& v) {
    return std::atan2(cross(u, v).norm(), std::fabs(dot(u, v)));
}

double point_line_dist(const Point3& q, const Point3& p, const Vec3& u) {
    return cross(q - p, u).norm();
}

// Closest-approach parameter on the segment line A + t e to the line
// (p0, u); fails for near-parallel pairs.
bool support_param(const Point3& p0, const Vec3& u, const Point3& A, const Vec3& e,
                   double* t_out) {
    double b = dot(u, e), c = e.norm2();
    double denom = c - b * b;  // |e|^2 sin^2(angle)
    if (denom <= 1e-14 * c) return false;
    Vec3 w0 = p0 - A;
    double d = dot(u, w0), f = dot(e, w0);
    *t_out = (f - b * d) / denom;
    return true;
}

}  // namespace

const char* to_string(OrderType t) {
    switch (t) {
        case OrderType::Simple: return "simple";
        case OrderType::Flipped: return "flipped";
        case OrderType::Alternating: return "alternating";
    }
    return "?";
}

const char* to_string(TrisecantClass t) {
    return t == TrisecantClass::Direct ? "direct" : "reversed";
}

std::array<double, 6> TransversalLine::plucker() const {
    Vec3 m = cross(point, direction);
    return {direction.x, direction.y, direction.z, m.x, m.y, m.z};
}

TransversalResult transversals_of_four_segments(const Segment& s1, const Segment& s2,
                                                const Segment& s3, const Segment& s4) {
    const Segment in[4] = {s1, s2, s3, s4};
    for (const Segment& s : in)
        if (s.length() == 0.0)
            throw GeometryError("transversal query needs non-degenerate segments");

    // Normalize to a centered O(1) frame; translation and scaling preserve
    // incidence and segment parameters.
    Vec3 centroid{};
    Point3 lo = in[0].start, hi = in[0].start;
    for (const Segment& s : in) {
        for (const Point3& p : {s.start, s.end}) {
            centroid += p;
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
    }
    centroid *= 1.0 / 8.0;
    double scale = distance(lo, hi);
    if (scale == 0.0) throw GeometryError("transversal query needs positive extent");

    Segment loc[4];
    Vec3 ldir[4];
    for (int i = 0; i < 4; ++i) {
        loc[i] = {(in[i].start - centroid) / scale, (in[i].end - centroid) / scale};
        ldir[i] = loc[i].delta().normalized();
    }

    double M[4][6];
    for (int i = 0; i < 4; ++i) {
        Vec3 m = cross(loc[i].start, ldir[i]);
        M[i][0] = m.x;
        M[i][1] = m.y;
        M[i][2] = m.z;
        M[i][3] = ldir[i].x;
        M[i][4] = ldir[i].y;
        M[i][5] = ldir[i].z;
    }

    double basis[2][6];
    if (nullspace_rank(M, basis) < 4) return {true, {}};

    double qa = klein(basis[0]);
    double qc = klein(basis[1]);
    double qb = klein_bilinear(basis[0], basis[1]);
    if (std::max({std::fabs(qa), std::fabs(qb), std::fabs(qc)}) < 1e-12)
        return {true, {}};  // the whole pencil lies on the quadric

    TransversalResult res;
    std::vector<std::array<double, 2>> roots;
    double disc = qb * qb - qa * qc;
    if (disc < -1e-12) return res;  // no real transversal

    if (std::fabs(disc) <= 1e-12) {
        // Near-tangent double root: the algebra is ill-conditioned right at
        // the transition between two and zero lines, so hand the local frame
        // to the sampled search and keep whatever it can verify.
        OracleConfig cfg;
        cfg.sampler_resolution = 96;
        std::vector<TransversalHit> hits =
            sampled_transversals(loc[0], loc[1], loc[2], loc[3], cfg);
        for (TransversalHit& h : hits) {
            Point3 pw = h.line.point * scale + centroid;
            h.line.point = pw - h.line.direction * dot(pw, h.line.direction);
            res.hits.push_back(h);
        }
        std::sort(res.hits.begin(), res.hits.end(),
                  [](const TransversalHit& a, const TransversalHit& b) {
                      return a.params[0] < b.params[0];
                  });
        return res;
    }

    // Projective roots of qa a^2 + 2 qb ab + qc b^2: (qq : qa) and (qc : qq)
    // with qq = -(qb + sign(qb) sqrt(disc)); no division, stable when either
    // leading coefficient vanishes.
    double sq = std::sqrt(disc);
    double qq = -(qb + (qb >= 0.0 ? sq : -sq));
    roots.push_back({qq, qa});
    roots.push_back({qc, qq});

    for (auto [al, be] : roots) {
        double nrm = std::hypot(al, be);
        if (nrm == 0.0) continue;
        al /= nrm;
        be /= nrm;
        double X[6];
        for (int j = 0; j < 6; ++j) X[j] = al * basis[0][j] + be * basis[1][j];
        Vec3 d{X[0], X[1], X[2]}, m{X[3], X[4], X[5]};
        double xn = std::sqrt(d.norm2() + m.norm2());
        if (xn == 0.0 || d.norm() < 1e-9 * xn) continue;  // line at infinity

        Vec3 u = d.normalized();
        Point3 p0 = cross(d, m) / d.norm2();

        // Polish: intersect with the four support lines, refit a least
        // squares line, repeat.  Kills the O(sqrt(eps)) noise the quadric
        // root inherits near tangency.
        double t[4];
        bool ok = true;
        for (int iter = 0; iter < 3 && ok; ++iter) {
            Point3 P[4];
            for (int i = 0; i < 4 && ok; ++i) {
                ok = support_param(p0, u, loc[i].start, loc[i].delta(), &t[i]);
                if (ok) P[i] = loc[i].point_at(t[i]);
            }
            if (!ok) break;
            Point3 pc = (P[0] + P[1] + P[2] + P[3]) * 0.25;
            double C[3][3] = {};
            for (int i = 0; i < 4; ++i) {
                Vec3 w = P[i] - pc;
                double wv[3] = {w.x, w.y, w.z};
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2) C[a2][b2] += wv[a2] * wv[b2];
            }
            Vec3 v = u;
            for (int pit = 0; pit < 20; ++pit) {
                Vec3 nv{C[0][0] * v.x + C[0][1] * v.y + C[0][2] * v.z,
                        C[1][0] * v.x + C[1][1] * v.y + C[1][2] * v.z,
                        C[2][0] * v.x + C[2][1] * v.y + C[2][2] * v.z};
                double nn = nv.norm();
                if (nn == 0.0) break;
                v = nv / nn;
            }
            if (dot(v, u) < 0.0) v = -v;
            u = v;
            p0 = pc;
        }
        if (!ok) continue;

        double resid = 0.0;
        bool inside = true;
        for (int i = 0; i < 4; ++i) {
            double slack = 1e-9 / loc[i].length();
            if (t[i] < -slack || t[i] > 1.0 + slack) {
                inside = false;
                break;
            }
            t[i] = std::clamp(t[i], 0.0, 1.0);
            resid = std::max(resid, point_line_dist(loc[i].point_at(t[i]), p0, u));
        }
        if (!inside || resid > 1e-7) continue;

        TransversalHit hit;
        hit.line.direction = canonical_direction(u);
        Point3 pw = p0 * scale + centroid;
        hit.line.point = pw - hit.line.direction * dot(pw, hit.line.direction);
        hit.params = {t[0], t[1], t[2], t[3]};

        bool dup = false;
        for (const TransversalHit& prev : res.hits) {
            if (line_angle(prev.line.direction, hit.line.direction) < 1e-6 &&
                point_line_dist(hit.line.point, prev.line.point,
                                prev.line.direction) < 1e-6 * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) res.hits.push_back(hit);
    }

    std::sort(res.hits.begin(), res.hits.end(),
              [](const TransversalHit& a, const TransversalHit& b) {
                  return a.params[0] < b.params[0];
              });
    return res;
}

OrderType classify_order(double sa, double sb, double sc, double sd, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("total length must be positive");
    double s[4] = {sa, sb, sc, sd};
    for (double& v : s) {
        v = std::fmod(v, L);
        if (v < 0.0) v += L;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (s[i] == s[j])
                throw std::invalid_argument("secant arclengths must be distinct");

    int idx[4] = {0, 1, 2, 3};
    std::sort(idx, idx + 4, [&](int a, int b) { return s[a] < s[b]; });
    int start = 0;
    while (idx[start] != 0) ++start;
    int seq[4], rev[4];
    for (int i = 0; i < 4; ++i) seq[i] = idx[(start + i) % 4];
    rev[0] = seq[0];
    rev[1] = seq[3];
    rev[2] = seq[2];
    rev[3] = seq[1];
    const int* canon = std::lexicographical_compare(seq, seq + 4, rev, rev + 4)
                           ? seq
                           : rev;

    if (canon[1] == 1 && canon[2] == 2) return OrderType::Simple;
    if (canon[1] == 1 && canon[2] == 3) return OrderType::Flipped;
    return OrderType::Alternating;  // canon = a c b d
}

TrisecantClass classify_trisecant(double sa, double sb, double sc, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("total length must be positive");
    auto fwd = [&](double x, double y) {
        double d = std::fmod(y - x, L);
        if (d < 0.0) d += L;
        return d;
    };
    double ab = fwd(sa, sb), ac = fwd(sa, sc);
    if (ab == 0.0 || ac == 0.0 || ab == ac)
        throw std::invalid_argument("secant arclengths must be distinct");
    return ab < ac ? TrisecantClass::Direct : TrisecantClass::Reversed;
}

Segment midsegment(const Quadrisecant& q) { return {q.points[1], q.points[2]}; }

namespace {

struct ScanCandidate {
    Quadrisecant q;
    bool multi_flagged = false;
};

double circular_gap(double a, double b, double L) {
    double d = std::fabs(a - b);
    return std::min(d, L - d);
}

}  // namespace

QuadrisecantScan find_quadrisecants(const PolyKnot& k, double tol, int num_threads) {
    int n = k.size();
    double L = k.total_length();
    double diag = k.bounding_box_diagonal();
    if (num_threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        num_threads = hc == 0 ? 1 : static_cast<int>(hc);
    }
    num_threads = std::min(num_threads, 64);

    QuadrisecantScan scan;
    if (n < 8) return scan;  // no four pairwise non-adjacent edges

    // Edge quadruples are dealt out by first index; per-index buckets are
    // concatenated in order, which makes the result independent of the
    // thread count.
    std::vector<std::vector<Quadrisecant>> buckets(n);
    std::vector<std::uint64_t> degen(n, 0);

    auto worker = [&](int t0) {
        for (int i = t0; i < n; i += num_threads) {
            for (int j = i + 2; j < n; ++j) {
                for (int km = j + 2; km < n; ++km) {
                    for (int l = km + 2; l < n; ++l) {
                        if (i == 0 && l == n - 1) continue;  // wrap-adjacent
                        TransversalResult tr = transversals_of_four_segments(
                            k.edge(i), k.edge(j), k.edge(km), k.edge(l));
                        if (tr.degenerate) {
                            ++degen[i];
                            continue;
                        }
                        const int eidx[4] = {i, j, km, l};
                        for (const TransversalHit& h : tr.hits) {
                            Quadrisecant q;
                            q.line = h.line;
                            bool bad = false;
                            for (int e = 0; e < 4; ++e) {
                                double tt = h.params[e];
                                double len = k.edge_length(eidx[e]);
                                if (tt * len <= tol) tt = 0.0;
                                else if ((1.0 - tt) * len <= tol) tt = 1.0;
                                q.positions[e] = k.position_on_edge(eidx[e], tt);
                                q.points[e] = k.point_at(q.positions[e]);
                                q.line_params[e] =
                                    dot(q.points[e] - q.line.point, q.line.direction);
                            }
                            // Order along the line.
                            int ord[4] = {0, 1, 2, 3};
                            std::sort(ord, ord + 4, [&](int a, int b) {
                                return q.line_params[a] < q.line_params[b];
                            });
                            Quadrisecant qs = q;
                            for (int e = 0; e < 4; ++e) {
                                qs.positions[e] = q.positions[ord[e]];
                                qs.points[e] = q.points[ord[e]];
                                qs.line_params[e] = q.line_params[ord[e]];
                            }
                            for (int e = 0; e + 1 < 4 && !bad; ++e) {
                                if (qs.line_params[e + 1] - qs.line_params[e] <=
                                    1e-9 * diag)
                                    bad = true;  // coincident secant points
                                if (circular_gap(qs.positions[e + 1].s,
                                                 qs.positions[e].s, L) <= tol)
                                    bad = true;
                            }
                            if (bad) {
                                ++degen[i];
                                continue;
                            }
                            qs.order_type =
                                classify_order(qs.positions[0].s, qs.positions[1].s,
                                               qs.positions[2].s, qs.positions[3].s, L);
                            qs.r = distance(qs.points[0], qs.points[1]);
                            qs.s = distance(qs.points[1], qs.points[2]);
                            qs.t = distance(qs.points[2], qs.points[3]);
                            buckets[i].push_back(qs);
                        }
                    }
                }
            }
        }
    };

    if (num_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(num_threads);
        for (int t0 = 0; t0 < num_threads; ++t0) pool.emplace_back(worker, t0);
        for (std::thread& th : pool) th.join();
    }

    for (std::uint64_t d : degen) scan.degenerate_quadruples += d;

    // Merge duplicate lines found through different edge quadruples.
    std::vector<ScanCandidate> accepted;
    for (const auto& bucket : buckets) {
        for (const Quadrisecant& cand : bucket) {
            bool merged = false;
            for (ScanCandidate& acc : accepted) {
                if (line_angle(acc.q.line.direction, cand.line.direction) >= 1e-6)
                    continue;
                if (point_line_dist(cand.line.point, acc.q.line.point,
                                    acc.q.line.direction) >= 1e-6 * diag ||
                    point_line_dist(acc.q.line.point, cand.line.point,
                                    cand.line.direction) >= 1e-6 * diag)
                    continue;
                ++scan.dedup_merges;
                // Same line: check whether the new quadruple contributes
                // intersection components beyond the four already recorded.
                double comp_tol = std::max(tol, 1e-6 * diag);
                for (const ArcPosition& p : cand.positions) {
                    double best = std::numeric_limits<double>::infinity();
                    for (const ArcPosition& ap : acc.q.positions)
                        best = std::min(best, circular_gap(p.s, ap.s, L));
                    if (best > comp_tol && !acc.multi_flagged) {
                        acc.multi_flagged = true;
                        ++scan.multi_secant_lines;
                    }
                }
                merged = true;
                break;
            }
            if (!merged) accepted.push_back({cand, false});
        }
    }

    scan.quadrisecants.reserve(accepted.size());
    for (ScanCandidate& sc : accepted) scan.quadrisecants.push_back(std::move(sc.q));
    std::sort(scan.quadrisecants.begin(), scan.quadrisecants.end(),
              [](const Quadrisecant& a, const Quadrisecant& b) {
                  for (int i = 0; i < 4; ++i) {
                      if (a.positions[i].s != b.positions[i].s)
                          return a.positions[i].s < b.positions[i].s;
                  }
                  if (a.line.direction.x != b.line.direction.x)
                      return a.line.direction.x < b.line.direction.x;
                  if (a.line.direction.y != b.line.direction.y)
                      return a.line.direction.y < b.line.direction.y;
                  return a.line.direction.z < b.line.direction.z;
              });
    return scan;
}

}  // namespace knotgeo
