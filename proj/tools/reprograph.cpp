// Command-line front end for the reproducing-graph toolkit.
//
// Subcommands: grow, chain, phase, spectral, bpre, check.  Flags can also be
// supplied through a flat key=value config file (--config); command-line
// flags win.  REPROGRAPH_SEED provides the default master seed.
//
// Exit codes: 0 success, 1 usage/config error, 2 resource cap exceeded,
// 3 acceptance failure.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reprograph/acceptance.hpp"
#include "reprograph/commands.hpp"
#include "reprograph/version.hpp"

namespace {

using namespace reprograph;

void add_common(CLI::App* sub, CommonConfig& cfg) {
    // take_last lets command-line flags override config-file values, which
    // are injected ahead of the user's flags below.
    sub->add_option("--alpha", cfg.params.alpha, "child-child edge probability")
        ->check(CLI::Range(0.0, 1.0))
        ->take_last();
    sub->add_option("--beta", cfg.params.beta, "child-parent edge probability")
        ->check(CLI::Range(0.0, 1.0))
        ->take_last();
    sub->add_option("--gamma", cfg.params.gamma, "child to parent-neighbour edge probability")
        ->check(CLI::Range(0.0, 1.0))
        ->take_last();
    sub->add_option("--g0", cfg.g0, "start graph: k<n>, p<n>, c<n>, or an edge-list file")
        ->take_last();
    sub->add_option("--steps", cfg.steps, "number of generations to grow")->take_last();
    sub->add_option("--reps", cfg.reps, "replicates")->check(CLI::PositiveNumber)->take_last();
    sub->add_option("--seed", cfg.seed, "master seed")
        ->envname("REPROGRAPH_SEED")
        ->take_last();
    sub->add_option("--out", cfg.out, "output path (default stdout)")->take_last();
    sub->add_option("--format", cfg.format, "output format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->take_last();
    sub->add_option("--workers", cfg.workers, "worker threads (output is identical for any value)")
        ->take_last();
    sub->add_option("--max-vertices", cfg.caps.max_vertices, "vertex cap")->take_last();
    sub->add_option("--max-edges", cfg.caps.max_edges, "edge cap")->take_last();
    std::string config_doc;  // handled before parsing; registered for --help only
    sub->add_option("--config", config_doc, "flat key=value config file; flags win");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Finds --config FILE / --config=FILE, removes it, and splices the file's
/// key=value pairs in as --key=value tokens right after the subcommand, so
/// later (user-typed) flags take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (file.empty()) return args;

    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open config file: " + file);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config file: expected key=value, got: " + line);
        injected.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
    }
    if (args.empty()) return injected;
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reprograph: simulation and analysis of randomised reproducing graphs"};
    app.set_version_flag("--version", std::string("reprograph ") + kVersion);
    app.require_subcommand(1);

    GrowConfig grow_cfg;
    auto* grow_sub = app.add_subcommand("grow", "grow a graph and emit per-generation stats");
    add_common(grow_sub, grow_cfg);
    std::int64_t snapshot_gen = -1;
    grow_sub->add_option("--snapshot", snapshot_gen, "emit DOT of generation N");
    grow_sub->add_option("--snapshot-out", grow_cfg.snapshot_out,
                         "DOT output path (default g<N>.dot)");
    grow_sub->add_option("--moments-reps", grow_cfg.moments_reps,
                         "emit a theory-vs-Monte-Carlo edge moment table over this many runs");

    ChainConfig chain_cfg;
    auto* chain_sub =
        app.add_subcommand("chain", "degree Markov chain: stationary law, tail, trajectories");
    add_common(chain_sub, chain_cfg);
    chain_sub->add_option("--truncation", chain_cfg.truncation,
                          "kernel truncation (0 = adaptive doubling)");
    chain_sub->add_option("--lump-tol", chain_cfg.lump_tol,
                          "target stationary mass at the truncation state");
    chain_sub->add_flag("--tail-only", chain_cfg.tail_only, "print the tail exponent and exit");
    chain_sub->add_option("--trajectory", chain_cfg.trajectory_steps,
                          "simulate a trajectory of this many steps instead");
    chain_sub->add_option("--burnin", chain_cfg.burnin, "burn-in for trajectory summaries");
    chain_sub->add_option("--kernel-out", chain_cfg.kernel_out, "also export the kernel as CSV");
    bool stationary_flag = false;
    chain_sub->add_flag("--stationary", stationary_flag,
                        "solve for the stationary distribution (default mode)");

    PhaseConfig phase_cfg;
    auto* phase_sub = app.add_subcommand("phase", "classify regimes over an (alpha, gamma) grid");
    add_common(phase_sub, phase_cfg);
    std::string grid_alpha = "0:1:11", grid_gamma = "0:1:11";
    phase_sub->add_option("--grid-alpha", grid_alpha, "alpha grid: a,b,c or lo:hi:count");
    phase_sub->add_option("--grid-gamma", grid_gamma, "gamma grid: a,b,c or lo:hi:count");
    phase_sub->add_flag("--empirical", phase_cfg.empirical,
                        "add Monte Carlo columns (uses --steps, --reps, --beta)");

    SpectralConfig spectral_cfg;
    auto* spectral_sub =
        app.add_subcommand("spectral", "normalized-Laplacian spectrum and Cheeger bounds");
    add_common(spectral_sub, spectral_cfg);
    spectral_sub->add_option("--max-spectral-vertices", spectral_cfg.max_spectral_vertices,
                             "dense eigensolver size cap");

    BpreConfig bpre_cfg;
    auto* bpre_sub =
        app.add_subcommand("bpre", "beta=0 analysis: isolation curves and extinction estimates");
    add_common(bpre_sub, bpre_cfg);
    std::int64_t x0 = -1;
    bpre_sub->add_option("--x0", x0, "initial degree: run an extinction estimate");
    bpre_sub->add_option("--horizon", bpre_cfg.horizon, "extinction horizon (steps)");
    bpre_sub->add_option("--escape-cap", bpre_cfg.escape_cap,
                         "states at or above this count as survived");

    CheckConfig check_cfg;
    auto* check_sub = app.add_subcommand("check", "run the acceptance suite");
    check_sub->add_option("--seed", check_cfg.seed, "master seed")->envname("REPROGRAPH_SEED");
    check_sub->add_option("--workers", check_cfg.workers, "worker threads");
    check_sub->add_option("--only", check_cfg.only, "run only checks matching this substring");
    check_sub->add_flag("--list", check_cfg.list, "list available checks without running");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (*grow_sub) {
            if (snapshot_gen >= 0) grow_cfg.snapshot = static_cast<std::uint32_t>(snapshot_gen);
            return cmd_grow(grow_cfg);
        }
        if (*chain_sub) return cmd_chain(chain_cfg);
        if (*phase_sub) {
            phase_cfg.grid_alpha = parse_grid(grid_alpha);
            phase_cfg.grid_gamma = parse_grid(grid_gamma);
            return cmd_phase(phase_cfg);
        }
        if (*spectral_sub) return cmd_spectral(spectral_cfg);
        if (*bpre_sub) {
            if (x0 >= 0) bpre_cfg.x0 = static_cast<std::uint64_t>(x0);
            return cmd_bpre(bpre_cfg);
        }
        if (*check_sub) {
            check_cfg.cli_path = argv[0];
            return cmd_check(check_cfg);
        }
    } catch (const resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return exit_code::usage;
}
