#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "knotgeo_cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace knotgeo::cli;

    CLI::App app{"Thickness, ropelength, quadrisecants, and length certificates "
                 "for polygonal space curves"};
    app.require_subcommand(1);

    std::string file;
    AnalyzeOptions aopt;
    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a knot file");
    analyze->add_option("file", file, "vertex file: one 'x y z' per line")->required();
    analyze->add_option("--tol", aopt.tol, "arclength tolerance for merging secant points");
    analyze->add_flag("--assume-essential", aopt.assume_essential,
                      "treat found quadrisecants as essential in the summary");
    analyze->add_flag("--expect-nontrivial", aopt.expect_nontrivial,
                      "exit 3 when ropelength is below the nontrivial-knot floor");
    analyze->add_flag("--normalize", aopt.normalize,
                      "rescale to unit thickness before reporting");
    analyze->add_option("--format", aopt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--seed", aopt.seed, "seed recorded in the report");
    analyze->add_option("--threads", aopt.threads,
                        "scan worker threads (0 = hardware)");

    std::string cformat = "text";
    CLI::App* constants =
        app.add_subcommand("constants", "Print the certificate constants");
    constants->add_option("--format", cformat, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    OracleCheckOptions oopt;
    CLI::App* oracle =
        app.add_subcommand("oracle-check", "Cross-check closed forms against "
                                           "the sampling oracles");
    oracle->add_option("--circle-n", oopt.circle_n, "circle discretization");
    oracle->add_option("--resolution", oopt.resolution, "sampler grid resolution");

    std::string fname;
    CLI::App* fixture = app.add_subcommand("fixture", "Emit a built-in knot file");
    fixture->add_option("name", fname, "trefoil64 | square | ngon20 | fig8_32")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    if (analyze->parsed()) return run_analyze(file, aopt, std::cout, std::cerr);
    if (constants->parsed()) return run_constants(cformat, std::cout, std::cerr);
    if (oracle->parsed()) return run_oracle_check(oopt, std::cout, std::cerr);
    if (fixture->parsed()) return run_fixture(fname, std::cout, std::cerr);
    return kExitParse;
}
