#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "knotgeo/bounds.hpp"
#include "knotgeo/quadrisecant.hpp"
#include "knotgeo/thickness.hpp"

namespace knotgeo::cli {

struct AnalyzeOptions {
    double tol = 1e-9;
    bool assume_essential = false;
    bool expect_nontrivial = false;
    bool normalize = false;  // report in unit-thickness units
    std::string format = "text";
    std::uint64_t seed = 0;
    int threads = 0;
};

// Ropelength below this provably rules out a nontrivial knot: the weakest
// essential-quadrisecant certificate (alternating) evaluates to ~15.66.
inline constexpr double kNontrivialFloor = 15.66;

struct QuadrisecantEntry {
    Quadrisecant quad;                        // reported coordinates
    bounds::BoundCertificate certificate;     // from unit-thickness spacings
    bounds::ArcInequalityReport arc_checks;   // on the normalized knot
};

struct AnalysisReport {
    int n = 0;
    double length = 0.0;
    ThicknessReport thickness;
    std::vector<QuadrisecantEntry> entries;
    std::uint64_t degenerate_quadruples = 0;
    std::uint64_t dedup_merges = 0;
    std::uint64_t multi_secant_lines = 0;
    std::vector<std::string> warnings;
    AnalyzeOptions options;

    double unconditional_floor = 0.0;  // best floor from found quadrisecants
    double essential_bound = 0.0;      // best certificate bound
    bool nontrivial_floor_met = false;
};

std::string render_json(const AnalysisReport& rep);
std::string render_text(const AnalysisReport& rep);

}  // namespace knotgeo::cli
