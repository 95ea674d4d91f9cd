#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "knotgeo_cli/report.hpp"

namespace knotgeo::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;        // unreadable or malformed input
inline constexpr int kExitDegenerate = 2;   // geometrically degenerate input
inline constexpr int kExitExpectation = 3;  // --expect-nontrivial violated

int run_analyze(const std::string& path, const AnalyzeOptions& opt,
                std::ostream& out, std::ostream& err);

int run_constants(const std::string& format, std::ostream& out, std::ostream& err);

struct OracleCheckOptions {
    int circle_n = 4096;
    int resolution = 512;
    std::string format = "text";
};

int run_oracle_check(const OracleCheckOptions& opt, std::ostream& out,
                     std::ostream& err);

int run_fixture(const std::string& name, std::ostream& out, std::ostream& err);

}  // namespace knotgeo::cli
