#pragma once

#include <cstdint>
#include <vector>

#include "knotgeo/geometry.hpp"
#include "knotgeo/quadrisecant.hpp"

namespace knotgeo {

// Knobs for the slow reference computations.  These exist to cross-check the
// closed-form bounds and the algebraic transversal solver, not for speed.
struct OracleConfig {
    int circle_discretization = 4096;  // nodes per circle, >= 16
    int sampler_resolution = 512;      // grid per segment pair, >= 8
    std::uint64_t seed = 0;

    void validate() const;
};

// Shortest path between points at distances r and s from the origin,
// subtending angle theta, staying outside the open unit ball.  Computed on a
// visibility graph over a discretized circle; error is O(1/N^2).
double shortest_path_avoiding_ball_oracle(double r, double s, double theta,
                                          const OracleConfig& cfg = {});

// Shortest path from (-r,0) to (sep+t,0) outside two open unit disks
// centered at (0,0) and (sep,0).  Cross-checks f(r) + sep + f(t).
double two_ball_path_oracle(double r, double sep, double t,
                            const OracleConfig& cfg = {});

// Brute-force transversal search: sample lines through point pairs on the
// first two segments, keep grid cells whose line nearly meets the other two,
// cluster, then refine each cluster by bisection on the Pluecker side
// products until the line meets every segment within 1e-9.
std::vector<TransversalHit> sampled_transversals(const Segment& s1, const Segment& s2,
                                                 const Segment& s3, const Segment& s4,
                                                 const OracleConfig& cfg = {});

}  // namespace knotgeo
