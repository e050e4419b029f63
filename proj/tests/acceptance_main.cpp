// Standalone acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance_checks --cli <path-to-reprograph-binary> [--only id]
//        [--seed N] [--workers N]

#include <CLI11.hpp>

#include "reprograph/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite for the reproducing-graph toolkit"};
    reprograph::AcceptanceContext ctx;
    std::string only;
    app.add_option("--cli", ctx.cli_path, "path to the reprograph CLI binary");
    app.add_option("--only", only, "run only checks whose id contains this substring");
    app.add_option("--seed", ctx.seed, "master seed");
    app.add_option("--workers", ctx.workers, "worker threads for replicate loops");
    CLI11_PARSE(app, argc, argv);
    return reprograph::run_acceptance(ctx, only);
}
