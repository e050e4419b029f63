#pragma once

// Implementations behind the CLI subcommands.  Each cmd_* function does the
// work and returns a process exit code: 0 success, 1 usage/config error,
// 2 resource cap, 3 acceptance failure.  The thin CLI in tools/ only parses
// flags; everything here is directly testable.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reprograph/bpre.hpp"
#include "reprograph/csv.hpp"
#include "reprograph/degree_chain.hpp"
#include "reprograph/edge_stats.hpp"
#include "reprograph/graph.hpp"
#include "reprograph/graph_io.hpp"
#include "reprograph/spectral.hpp"
#include "reprograph/version.hpp"

namespace reprograph {

constexpr std::uint64_t kDefaultSeed = 1729;

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int resource = 2;
constexpr int acceptance = 3;
} // namespace exit_code

struct CommonConfig {
    Params params{};
    std::string g0 = "k2";
    std::uint32_t steps = 8;
    std::uint64_t reps = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string out;             // empty = stdout
    std::string format = "csv";  // csv | jsonl
    unsigned workers = 1;
    Caps caps{};
};

namespace detail {

/// "key=value ..." config echo.  Execution details (worker count, caps) are
/// excluded: output bytes depend only on the experiment definition.
class Echo {
public:
    explicit Echo(const std::string& cmd) { os_ << "cmd=" << cmd; }
    Echo& add(const std::string& k, const std::string& v) {
        os_ << " " << k << "=" << v;
        return *this;
    }
    Echo& add(const std::string& k, double v) { return add(k, fmt(v)); }
    Echo& add(const std::string& k, std::uint64_t v) { return add(k, std::to_string(v)); }
    Echo& params(const Params& p) {
        return add("alpha", p.alpha).add("beta", p.beta).add("gamma", p.gamma);
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

inline void csv_preamble(std::ostream& os, const Echo& echo) {
    os << "# reprograph " << kVersion << "\n# " << echo.str() << "\n";
}

inline double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

inline nlohmann::ordered_json stats_to_json(const GenerationStats& s) {
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["vertices"] = s.vertices;
    j["edges"] = s.edges;
    j["isolated_fraction"] = s.isolated_fraction;
    j["edges_over_2n"] = s.normalized_edges_sparse;
    if (s.n > 0) j["edges_over_2n_n"] = s.normalized_edges_critical;
    if (s.martingale_w)
        j["martingale_w"] = *s.martingale_w;
    else
        j["martingale_w"] = nullptr;
    j["max_degree"] = s.max_degree;
    nlohmann::ordered_json hist;
    for (auto [d, c] : s.degree_histogram) hist[std::to_string(d)] = c;
    j["degree_histogram"] = std::move(hist);
    return j;
}

} // namespace detail

// ---------------------------------------------------------------------------
// grow

struct GrowConfig : CommonConfig {
    std::optional<std::uint32_t> snapshot;  // generation to dump as DOT
    std::string snapshot_out;               // default g<N>.dot
    std::uint64_t moments_reps = 0;         // when > 0: theory-vs-MC moment table
};

inline int cmd_grow(const GrowConfig& cfg) {
    cfg.params.validate();
    const ReproGraph g0 = load_g0(cfg.g0);
    const StreamKey key(cfg.seed);
    const auto t0 = std::chrono::steady_clock::now();

    if (cfg.moments_reps > 0) {
        // Monte Carlo against the closed-form moment recursions, one row per generation.
        const std::uint64_t R = cfg.moments_reps;
        std::vector<std::vector<double>> edges(cfg.steps + 1, std::vector<double>(R));
        parallel_for_index(R, cfg.workers, [&](std::size_t r) {
            GrowOptions opts;
            opts.caps = cfg.caps;
            auto res = grow(g0, cfg.params, cfg.steps, key.child(static_cast<std::uint64_t>(r)),
                            opts);
            for (std::uint32_t n = 0; n <= cfg.steps; ++n)
                edges[n][r] = static_cast<double>(res.stats[n].edges);
        });
        detail::Echo echo("grow-moments");
        echo.params(cfg.params)
            .add("g0", cfg.g0)
            .add("steps", std::uint64_t(cfg.steps))
            .add("seed", cfg.seed)
            .add("reps", R);
        with_output(cfg.out, [&](std::ostream& os) {
            detail::csv_preamble(os, echo);
            os << "n,mean_theory,mean_mc,var_theory,var_mc,reps\n";
            const double v0 = g0.vertex_count();
            const double e0 = static_cast<double>(g0.edge_count());
            for (std::uint32_t n = 0; n <= cfg.steps; ++n) {
                double mean = 0, var = 0;
                for (double e : edges[n]) mean += e;
                mean /= static_cast<double>(R);
                for (double e : edges[n]) var += (e - mean) * (e - mean);
                var /= static_cast<double>(R > 1 ? R - 1 : 1);
                os << n << "," << fmt(expected_edges(n, cfg.params, v0, e0)) << "," << fmt(mean)
                   << "," << fmt(variance_edges(n, cfg.params, v0, e0)) << "," << fmt(var) << ","
                   << R << "\n";
            }
        });
        return exit_code::ok;
    }

    GrowOptions opts;
    opts.caps = cfg.caps;
    opts.workers = cfg.workers;
    if (cfg.snapshot) {
        const std::uint32_t want = *cfg.snapshot;
        const std::string path =
            cfg.snapshot_out.empty() ? "g" + std::to_string(want) + ".dot" : cfg.snapshot_out;
        opts.observer = [want, path](const ReproGraph& g) {
            if (g.generation() == want) export_dot(g, path);
        };
    }
    auto res = grow(g0, cfg.params, cfg.steps, key, opts);

    detail::Echo echo("grow");
    echo.params(cfg.params)
        .add("g0", cfg.g0)
        .add("steps", std::uint64_t(cfg.steps))
        .add("seed", cfg.seed);
    if (cfg.format == "jsonl") {
        nlohmann::ordered_json j;
        j["cmd"] = "grow";
        j["version"] = kVersion;
        j["alpha"] = cfg.params.alpha;
        j["beta"] = cfg.params.beta;
        j["gamma"] = cfg.params.gamma;
        j["g0"] = cfg.g0;
        j["steps"] = cfg.steps;
        j["seed"] = cfg.seed;
        nlohmann::ordered_json stats = nlohmann::ordered_json::array();
        for (const auto& s : res.stats) stats.push_back(detail::stats_to_json(s));
        j["stats"] = std::move(stats);
        j["wall_time_ms"] = detail::wall_ms_since(t0);
        with_output(cfg.out, [&](std::ostream& os) { os << j.dump() << "\n"; });
    } else {
        with_output(cfg.out, [&](std::ostream& os) {
            detail::csv_preamble(os, echo);
            os << "n,vertices,edges,isolated_fraction,edges_over_2n,edges_over_2n_n,"
                  "martingale_w,max_degree\n";
            for (const auto& s : res.stats) {
                os << s.n << "," << s.vertices << "," << s.edges << ","
                   << fmt(s.isolated_fraction) << "," << fmt(s.normalized_edges_sparse) << ",";
                if (s.n > 0) os << fmt(s.normalized_edges_critical);
                os << ",";
                if (s.martingale_w) os << fmt(*s.martingale_w);
                os << "," << s.max_degree << "\n";
            }
        });
    }
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// chain

struct ChainConfig : CommonConfig {
    std::uint32_t truncation = 0;  // 0 = adaptive
    double lump_tol = 1e-9;
    bool tail_only = false;
    std::uint64_t trajectory_steps = 0;  // > 0 switches to trajectory mode
    std::uint64_t burnin = 1000;
    std::string kernel_out;  // optional kernel CSV
};

inline std::string format_tail_exponent(const std::optional<double>& p) {
    if (!p.has_value()) return "none";
    return fmt(*p);
}

inline int cmd_chain(const ChainConfig& cfg) {
    cfg.params.validate();
    if (cfg.tail_only) {
        with_output(cfg.out, [&](std::ostream& os) {
            os << format_tail_exponent(tail_exponent(cfg.params)) << "\n";
        });
        return exit_code::ok;
    }

    if (cfg.trajectory_steps > 0) {
        const ReproGraph g0 = load_g0(cfg.g0);
        const StreamKey key(cfg.seed);
        Stream pick(key.child(9001));
        const std::uint32_t v = static_cast<std::uint32_t>(pick.next_below(g0.vertex_count()));
        const std::uint64_t x0 = g0.degree(v);
        // In transient regimes the state grows geometrically and a step costs
        // O(x); stop the trajectory once x passes 2^20 rather than stalling.
        constexpr std::uint64_t state_cap = 1ull << 20;
        const StreamKey traj_key = key.child(9002);
        std::vector<std::uint64_t> xs{x0};
        std::uint64_t x = x0;
        bool capped = false;
        for (std::uint64_t t = 0; t < cfg.trajectory_steps; ++t) {
            x = chain_step(x, cfg.params, traj_key.child(t));
            xs.push_back(x);
            if (x >= state_cap) {
                capped = true;
                break;
            }
        }
        if (capped)
            std::cerr << "note: trajectory stopped after " << (xs.size() - 1)
                      << " steps: state reached " << x << " (cap " << state_cap << ")\n";
        detail::Echo echo("chain-trajectory");
        echo.params(cfg.params)
            .add("g0", cfg.g0)
            .add("x0", x0)
            .add("steps", cfg.trajectory_steps)
            .add("seed", cfg.seed);
        with_output(cfg.out, [&](std::ostream& os) {
            detail::csv_preamble(os, echo);
            os << "step,x\n";
            for (std::size_t t = 0; t < xs.size(); ++t) os << t << "," << xs[t] << "\n";
        });
        if (xs.size() > cfg.burnin) {
            std::vector<std::uint64_t> tail_xs(xs.begin() + cfg.burnin, xs.end());
            std::cerr << "empirical_mean=" << fmt(moment(tail_xs, 1.0))
                      << " empirical_p2=" << fmt(moment(tail_xs, 2.0)) << " burnin=" << cfg.burnin
                      << "\n";
        }
        return exit_code::ok;
    }

    // Stationary mode.
    if (cfg.params.beta == 0.0) {
        std::cerr << "error: beta = 0 makes state 0 absorbing; use the bpre command for this "
                     "regime\n";
        return exit_code::usage;
    }
    if (cfg.params.alpha >= 1.0 || cfg.params.gamma >= 1.0) {
        std::cerr << "error: alpha = 1 or gamma = 1 makes the degree chain non-decreasing; no "
                     "stationary distribution exists\n";
        return exit_code::usage;
    }
    const DegreeRegime regime = classify_degree_regime(cfg.params);
    if (regime != DegreeRegime::subcritical) {
        std::cerr << "error: (1+gamma)(alpha+gamma) = " << fmt(cfg.params.degree_criterion())
                  << " >= 1: the chain is transient (or critical) and the degree distribution "
                     "does not converge to a stationary law; --stationary requires the "
                     "subcritical regime\n";
        return exit_code::usage;
    }

    DegreeKernel kernel;
    StationaryResult stat;
    if (cfg.truncation > 0) {
        kernel = build_kernel(cfg.params, cfg.truncation);
        stat = stationary_distribution(kernel);
    } else {
        AdaptiveStationaryOptions opts;
        opts.lump_tol = cfg.lump_tol;
        auto ad = stationary_adaptive(cfg.params, opts);
        kernel = std::move(ad.kernel);
        stat = std::move(ad.stationary);
    }

    detail::Echo echo("chain");
    echo.params(cfg.params).add("truncation", std::uint64_t(kernel.truncation)).add("seed", cfg.seed);
    with_output(cfg.out, [&](std::ostream& os) {
        detail::csv_preamble(os, echo);
        os << "x,probability\n";
        for (std::size_t x = 0; x < stat.pi.size(); ++x)
            os << x << "," << fmt(stat.pi[x]) << "\n";
    });
    if (!cfg.kernel_out.empty()) {
        with_output(cfg.kernel_out, [&](std::ostream& os) {
            detail::csv_preamble(os, echo);
            os << "x,y,probability\n";
            for (std::uint32_t x = 0; x <= kernel.truncation; ++x) {
                const KernelRow& row = kernel.rows[x];
                for (std::size_t j = 0; j < row.p.size(); ++j)
                    if (row.p[j] != 0.0)
                        os << x << "," << row.first + j << "," << fmt(row.p[j]) << "\n";
            }
        });
    }
    std::cerr << "regime=" << to_string(regime) << " mean=" << fmt(moment(stat.pi, 1.0))
              << " p2=" << fmt(moment(stat.pi, 2.0))
              << " tail_exponent=" << format_tail_exponent(tail_exponent(cfg.params))
              << " truncation=" << kernel.truncation << " iterations=" << stat.iterations
              << " residual=" << fmt(stat.residual) << " lumped_mass=" << fmt(stat.lumped_mass)
              << "\n";
    for (const auto& w : stat.warnings) std::cerr << "warning: " << w << "\n";
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// phase

struct PhaseConfig : CommonConfig {
    std::vector<double> grid_alpha{0.0};
    std::vector<double> grid_gamma{0.0};
    bool empirical = false;
};

/// Parses "a,b,c" or "lo:hi:count" into a grid.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        std::uint64_t count = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
            throw std::invalid_argument("grid: expected lo:hi:count, got " + text);
        if (count == 1) return {lo};
        for (std::uint64_t i = 0; i < count; ++i)
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("grid: no values in " + text);
    return out;
}

inline int cmd_phase(const PhaseConfig& cfg) {
    const ReproGraph g0 = load_g0(cfg.g0);
    const double v0 = g0.vertex_count();
    const StreamKey key(cfg.seed);

    detail::Echo echo("phase");
    echo.add("beta", cfg.params.beta).add("g0", cfg.g0).add("seed", cfg.seed);
    if (cfg.empirical)
        echo.add("steps", std::uint64_t(cfg.steps)).add("reps", cfg.reps);

    with_output(cfg.out, [&](std::ostream& os) {
        detail::csv_preamble(os, echo);
        os << "alpha,gamma,degree_regime,tail_exponent,edge_regime,edge_limit,bpre_criterion,"
              "bpre_verdict";
        if (cfg.empirical) os << ",emp_isolated_fraction,emp_edges_over_2n";
        os << "\n";
        for (std::size_t i = 0; i < cfg.grid_alpha.size(); ++i) {
            for (std::size_t j = 0; j < cfg.grid_gamma.size(); ++j) {
                Params p{cfg.grid_alpha[i], cfg.params.beta, cfg.grid_gamma[j]};
                p.validate();
                const auto edge = classify_edge_regime(p, v0);
                Params p0 = p;
                p0.beta = 0.0;
                const auto bpre = classify_bpre(p0);
                os << fmt(p.alpha) << "," << fmt(p.gamma) << ","
                   << to_string(classify_degree_regime(p)) << ","
                   << format_tail_exponent(tail_exponent(p)) << "," << to_string(edge.regime)
                   << "," << fmt(edge.limit_value) << "," << fmt(bpre.criterion_value) << ","
                   << to_string(bpre.verdict)
                   << (bpre.degenerate_boundary ? "-degenerate" : "");
                if (cfg.empirical) {
                    std::vector<double> iso(cfg.reps), ratio(cfg.reps);
                    parallel_for_index(cfg.reps, cfg.workers, [&](std::size_t r) {
                        GrowOptions opts;
                        opts.caps = cfg.caps;
                        auto res = grow(g0, p, cfg.steps,
                                        key.child({i, j, static_cast<std::uint64_t>(r)}), opts);
                        iso[r] = res.stats.back().isolated_fraction;
                        ratio[r] = res.stats.back().normalized_edges_sparse;
                    });
                    double mi = 0, mr = 0;
                    for (std::uint64_t r = 0; r < cfg.reps; ++r) {
                        mi += iso[r];
                        mr += ratio[r];
                    }
                    os << "," << fmt(mi / static_cast<double>(cfg.reps)) << ","
                       << fmt(mr / static_cast<double>(cfg.reps));
                }
                os << "\n";
            }
        }
    });
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// spectral

struct SpectralConfig : CommonConfig {
    std::uint64_t max_spectral_vertices = 4096;
};

inline int cmd_spectral(const SpectralConfig& cfg) {
    cfg.params.validate();
    const ReproGraph g0 = load_g0(cfg.g0);
    const double final_v = std::ldexp(static_cast<double>(g0.vertex_count()), cfg.steps);
    if (final_v > static_cast<double>(cfg.max_spectral_vertices))
        throw std::invalid_argument(
            "spectral: final graph would have " + fmt(final_v) +
            " vertices, above the dense-solver cap " +
            std::to_string(cfg.max_spectral_vertices) + "; lower --steps or raise the cap");
    const StreamKey key(cfg.seed);

    std::vector<std::vector<SpectralReport>> reports(cfg.reps);
    parallel_for_index(cfg.reps, cfg.workers, [&](std::size_t r) {
        GrowOptions opts;
        opts.caps = cfg.caps;
        opts.observer = [&](const ReproGraph& g) {
            if (g.vertex_count() >= 2) reports[r].push_back(spectral_report(g));
        };
        grow(g0, cfg.params, cfg.steps, key.child(static_cast<std::uint64_t>(r)), opts);
    });

    detail::Echo echo("spectral");
    echo.params(cfg.params)
        .add("g0", cfg.g0)
        .add("steps", std::uint64_t(cfg.steps))
        .add("reps", cfg.reps)
        .add("seed", cfg.seed);
    with_output(cfg.out, [&](std::ostream& os) {
        detail::csv_preamble(os, echo);
        const bool with_rep = cfg.reps > 1;
        os << (with_rep ? "rep," : "")
           << "n,vertices,lambda_1,lambda_max,spectral_radius,cheeger_sweep,cheeger_exact\n";
        for (std::uint64_t r = 0; r < cfg.reps; ++r)
            for (const auto& rep : reports[r]) {
                if (with_rep) os << r << ",";
                os << rep.n << "," << rep.vertices << "," << fmt(rep.lambda_1) << ","
                   << fmt(rep.lambda_max) << "," << fmt(rep.spectral_radius) << ","
                   << fmt(rep.cheeger_sweep_upper) << ",";
                if (rep.cheeger_exact) os << fmt(*rep.cheeger_exact);
                os << "\n";
            }
    });
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// bpre

struct BpreConfig : CommonConfig {
    std::optional<std::uint64_t> x0;  // set: extinction estimate; unset: isolation curve
    std::uint64_t horizon = 200;
    std::uint64_t escape_cap = 4096;
};

inline int cmd_bpre(const BpreConfig& cfg) {
    cfg.params.validate();
    if (cfg.params.beta != 0.0) {
        std::cerr << "error: bpre requires beta = 0 (got beta = " << fmt(cfg.params.beta)
                  << ")\n";
        return exit_code::usage;
    }
    const auto verdict = classify_bpre(cfg.params);
    std::cerr << "criterion=" << fmt(verdict.criterion_value)
              << " verdict=" << to_string(verdict.verdict)
              << (verdict.degenerate_boundary ? " (degenerate boundary: constant chain)" : "")
              << "\n";
    const StreamKey key(cfg.seed);

    if (cfg.x0) {
        const auto t0 = std::chrono::steady_clock::now();
        auto est = extinction_probability(cfg.params, *cfg.x0, cfg.horizon, cfg.reps,
                                          key.child(1), cfg.escape_cap, cfg.workers);
        nlohmann::ordered_json j;
        j["cmd"] = "bpre-extinction";
        j["version"] = kVersion;
        j["alpha"] = cfg.params.alpha;
        j["beta"] = cfg.params.beta;
        j["gamma"] = cfg.params.gamma;
        j["x0"] = *cfg.x0;
        j["horizon"] = est.horizon;
        j["reps"] = est.reps;
        j["seed"] = cfg.seed;
        j["escape_cap"] = cfg.escape_cap;
        j["criterion"] = verdict.criterion_value;
        j["verdict"] = to_string(verdict.verdict);
        j["degenerate_boundary"] = verdict.degenerate_boundary;
        j["extinct_by_horizon"] = est.probability;
        j["half_width"] = est.half_width;
        j["escaped"] = est.escaped;
        j["wall_time_ms"] = detail::wall_ms_since(t0);
        with_output(cfg.out, [&](std::ostream& os) { os << j.dump() << "\n"; });
        return exit_code::ok;
    }

    auto curve = isolation_curve(load_g0(cfg.g0), cfg.params, cfg.steps, cfg.reps, key.child(2),
                                 cfg.caps, cfg.workers);
    detail::Echo echo("bpre-curve");
    echo.params(cfg.params)
        .add("g0", cfg.g0)
        .add("steps", std::uint64_t(cfg.steps))
        .add("reps", cfg.reps)
        .add("seed", cfg.seed);
    with_output(cfg.out, [&](std::ostream& os) {
        detail::csv_preamble(os, echo);
        os << "step,isolated_fraction_mean,isolated_fraction_min,isolated_fraction_max\n";
        for (const auto& pt : curve)
            os << pt.step << "," << fmt(pt.mean) << "," << fmt(pt.min) << "," << fmt(pt.max)
               << "\n";
    });
    return exit_code::ok;
}

} // namespace reprograph
