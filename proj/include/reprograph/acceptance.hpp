#pragma once

// The acceptance suite: finite-scale consequences of the model's limit
// behaviour, each with a pinned tolerance.  Run by the `check` subcommand
// and by the standalone acceptance binary; every check prints one PASS/FAIL
// line.  All randomness derives from the context seed, so results are
// reproducible across runs and worker counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "reprograph/bpre.hpp"
#include "reprograph/commands.hpp"
#include "reprograph/degree_chain.hpp"
#include "reprograph/edge_stats.hpp"
#include "reprograph/graph_io.hpp"
#include "reprograph/spectral.hpp"

namespace reprograph {

struct AcceptanceContext {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 2;
    std::string cli_path;  // required by the determinism check
};

struct CheckResult {
    std::string id;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

struct Check {
    std::string id;
    std::string title;
    std::function<CheckResult(const AcceptanceContext&)> run;
};

namespace detail {

struct Grader {
    bool pass = true;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes << "FAIL(" << what << ") ";
        }
    }
    void note(const std::string& what) { notes << what << " "; }
    std::string str() const {
        std::string s = notes.str();
        if (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    }
};

inline std::string fixed3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct MeanVar {
    double mean = 0, var = 0, se_mean = 0, se_var = 0;
};

inline MeanVar mean_var(const std::vector<double>& xs) {
    MeanVar mv;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) mv.mean += x;
    mv.mean /= n;
    double m2 = 0, m4 = 0;
    for (double x : xs) {
        const double d2 = (x - mv.mean) * (x - mv.mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    mv.var = m2 / (n - 1);
    m2 /= n;
    m4 /= n;
    mv.se_mean = std::sqrt(mv.var / n);
    mv.se_var = std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n));
    return mv;
}

/// |got - want| <= 4 SE, or exact (to rounding) when the SE vanishes.
inline bool within_4se(double got, double want, double se) {
    if (se > 0.0) return std::fabs(got - want) <= 4.0 * se;
    return std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want));
}

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return xs[xs.size() / 2];
}

// --- criterion 1: edge-count moments ---------------------------------------

inline CheckResult check_edges(const AcceptanceContext& ctx) {
    Grader g;
    const std::uint64_t reps = 10000;
    const std::uint32_t n_max = 8;
    const Params triples[3] = {{0.3, 0.5, 0.2}, {0.0, 1.0, 0.2}, {0.0, 1.0, 1.0}};
    const StreamKey key = StreamKey(ctx.seed).child(101);
    double worst_z = 0.0;
    for (int t = 0; t < 3; ++t) {
        const Params p = triples[t];
        std::vector<std::vector<double>> edges(n_max + 1, std::vector<double>(reps));
        parallel_for_index(reps, ctx.workers, [&](std::size_t r) {
            auto res = grow(make_preset("k2"), p, n_max,
                            key.child({static_cast<std::uint64_t>(t), r}));
            for (std::uint32_t n = 0; n <= n_max; ++n)
                edges[n][r] = static_cast<double>(res.stats[n].edges);
        });
        for (std::uint32_t n = 1; n <= n_max; ++n) {
            const auto mv = mean_var(edges[n]);
            const double want_mean = expected_edges(n, p, 2, 1);
            const double want_var = variance_edges(n, p, 2, 1);
            g.require(within_4se(mv.mean, want_mean, mv.se_mean),
                      "mean triple=" + std::to_string(t) + " n=" + std::to_string(n));
            g.require(within_4se(mv.var, want_var, mv.se_var),
                      "var triple=" + std::to_string(t) + " n=" + std::to_string(n));
            if (mv.se_mean > 0)
                worst_z = std::max(worst_z, std::fabs(mv.mean - want_mean) / mv.se_mean);
            if (mv.se_var > 0)
                worst_z = std::max(worst_z, std::fabs(mv.var - want_var) / mv.se_var);
        }
    }
    g.note("max|z|=" + fixed3(worst_z) + " over 3 triples, n<=8, 1e4 runs (4 SE band)");
    return {"edges", g.pass, g.str(), 0};
}

// --- criterion 2: stationary degree law ------------------------------------

inline CheckResult check_stationary(const AcceptanceContext& ctx) {
    Grader g;
    const Params p{0.0, 1.0, 0.2};
    auto ad = stationary_adaptive(p);
    g.require(ad.lump_tol_met, "kernel lumped mass below 1e-9");

    GrowOptions keep;
    keep.keep_final = true;
    keep.workers = ctx.workers;
    auto res = grow(make_preset("k2"), p, 14, StreamKey(ctx.seed).child(102), keep);
    const double V = static_cast<double>(res.final_graph->vertex_count());
    std::vector<double> emp(ad.stationary.pi.size(), 0.0);
    double mean = 0;
    for (auto [d, c] : res.final_graph->degree_histogram()) {
        if (d < emp.size()) emp[d] = static_cast<double>(c) / V;
        mean += static_cast<double>(d) * static_cast<double>(c) / V;
    }
    double tv = 0;
    for (std::size_t d = 0; d < emp.size(); ++d) tv += std::fabs(emp[d] - ad.stationary.pi[d]);
    tv /= 2;
    g.require(tv <= 0.05, "TV(hist(G14), pi) <= 0.05");
    g.require(std::fabs(mean - 10.0 / 3.0) <= 0.05 * 10.0 / 3.0, "mean within 5% of 10/3");
    g.note("TV=" + fixed3(tv) + " mean=" + fixed3(mean) + " (target 3.333)");
    return {"stationary", g.pass, g.str(), 0};
}

// --- criterion 3: tail exponent ---------------------------------------------

inline CheckResult check_tail(const AcceptanceContext&) {
    Grader g;
    const double gamma = (std::sqrt(3.0) - 1.0) / 2.0;
    const Params p{0.0, 1.0, gamma};
    auto pstar = tail_exponent(p);
    g.require(pstar.has_value() && std::fabs(*pstar - 2.0) <= 1e-6,
              "tail_exponent = 2.000 +- 1e-6");

    auto st = stationary_distribution(build_kernel(p, 2048));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int d = 20; d <= 200; ++d) {
        const double x = std::log(static_cast<double>(d));
        const double y = std::log(st.pi[d]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    g.require(std::fabs(slope - (-3.0)) <= 0.5, "log-log slope of pi on [20,200] = -3 +- 0.5");
    g.note("p*=" + fixed3(pstar.value_or(-1)) + " slope=" + fixed3(slope));
    return {"tail", g.pass, g.str(), 0};
}

// --- criterion 4: degree collapse -------------------------------------------

inline CheckResult check_collapse(const AcceptanceContext& ctx) {
    Grader g;
    const Params p{0.9, 1.0, 0.8};
    const std::uint64_t seeds = 10;
    std::vector<std::array<double, 6>> props(seeds);
    const StreamKey key = StreamKey(ctx.seed).child(104);
    parallel_for_index(seeds, ctx.workers, [&](std::size_t s) {
        GrowOptions keep;
        keep.keep_final = true;
        auto res = grow(make_preset("k2"), p, 12, key.child(static_cast<std::uint64_t>(s)), keep);
        const double V = static_cast<double>(res.final_graph->vertex_count());
        auto hist = res.final_graph->degree_histogram();
        for (std::uint32_t d = 0; d <= 5; ++d)
            props[s][d] = hist.count(d) ? static_cast<double>(hist[d]) / V : 0.0;
    });
    double worst = 0;
    for (std::uint32_t d = 0; d <= 5; ++d) {
        double m = 0;
        for (std::uint64_t s = 0; s < seeds; ++s) m += props[s][d];
        m /= static_cast<double>(seeds);
        worst = std::max(worst, m);
        g.require(m < 0.01, "mean proportion of degree " + std::to_string(d) + " below 0.01");
    }
    g.note("max mean proportion over d<=5 at n=12: " + fixed3(worst));
    return {"collapse", g.pass, g.str(), 0};
}

// --- criterion 5: isolation transition at beta = 0 --------------------------

inline CheckResult check_isolation(const AcceptanceContext& ctx) {
    Grader g;
    const StreamKey key = StreamKey(ctx.seed).child(105);
    {
        const Params sub{0.0, 0.0, 0.2};
        const std::uint64_t reps = 10;
        std::vector<std::vector<double>> curves(reps);
        parallel_for_index(reps, ctx.workers, [&](std::size_t r) {
            auto res = grow(make_preset("k2"), sub, 12, key.child({1, r}));
            for (const auto& s : res.stats) curves[r].push_back(s.isolated_fraction);
        });
        double mean12 = 0;
        bool monotone = true;
        for (std::uint64_t r = 0; r < reps; ++r) {
            mean12 += curves[r].back();
            for (std::size_t i = 1; i < curves[r].size(); ++i)
                if (curves[r][i] < curves[r][i - 1]) monotone = false;
        }
        mean12 /= static_cast<double>(reps);
        g.require(monotone, "isolated fraction path-monotone in every subcritical run");
        g.require(mean12 >= 0.95, "subcritical mean isolated fraction at n=12 >= 0.95");
        g.note("subcritical mean=" + fixed3(mean12));
    }
    {
        const Params super{0.9, 0.0, 0.8};
        const std::uint64_t reps = 10;
        std::vector<double> final_iso(reps);
        parallel_for_index(reps, ctx.workers, [&](std::size_t r) {
            auto res = grow(make_preset("k2"), super, 12, key.child({2, r}));
            final_iso[r] = res.stats.back().isolated_fraction;
        });
        double mean12 = 0;
        for (double f : final_iso) mean12 += f;
        mean12 /= static_cast<double>(reps);
        g.require(mean12 <= 0.9, "supercritical mean isolated fraction at n=12 <= 0.9");
        auto est = extinction_probability(super, 5, 200, 100000, key.child(3), 4096, ctx.workers);
        g.require(est.probability <= 0.9, "extinction estimate (x0=5, horizon 200) <= 0.9");
        g.note("supercritical mean=" + fixed3(mean12) +
               " extinct=" + fixed3(est.probability) + "+-" + fixed3(est.half_width));
    }
    return {"isolation", g.pass, g.str(), 0};
}

// --- criterion 6: densification regimes -------------------------------------

inline CheckResult check_densification(const AcceptanceContext& ctx) {
    Grader g;
    const StreamKey key = StreamKey(ctx.seed).child(106);
    {
        auto ilt = grow(make_preset("k2"), Params{0.0, 1.0, 1.0}, 10, key.child(1));
        const double a = densification_fit(ilt.stats);
        const double want = std::log(3.0) / std::log(2.0);
        g.require(std::fabs(a - want) <= 0.05, "ILT densification exponent log3/log2 +- 0.05");
        g.note("ilt_fit=" + fixed3(a));
    }
    {
        auto sp = grow(make_preset("k2"), Params{0.0, 1.0, 0.2}, 14, key.child(2));
        const double ratio = sp.stats.back().normalized_edges_sparse;
        const double want = 2.0 * 1.0 / 0.6;  // V0 beta / (1 - 2 gamma - alpha)
        g.require(std::fabs(ratio - want) <= 0.10 * want,
                  "sparse E/2^n at n=14 within 10% of V0 b/(1-2g-a)");
        g.note("sparse_ratio=" + fixed3(ratio) + " (target " + fixed3(want) + ")");
    }
    {
        auto cr = grow(make_preset("k2"), Params{0.0, 1.0, 0.5}, 14, key.child(3));
        const double ratio = cr.stats.back().normalized_edges_critical;
        g.require(std::fabs(ratio - 1.0) <= 0.15,
                  "critical E/(2^n n) at n=14 within 15% of V0 b/2");
        g.note("critical_ratio=" + fixed3(ratio) + " (target 1)");
    }
    return {"densification", g.pass, g.str(), 0};
}

// --- criterion 7: edge martingale -------------------------------------------

inline CheckResult check_martingale(const AcceptanceContext& ctx) {
    Grader g;
    const Params p{0.5, 0.5, 0.5};
    const StreamKey key = StreamKey(ctx.seed).child(107);
    GrowOptions keep;
    keep.keep_final = true;
    auto base = grow(make_preset("k2"), p, 5, key.child(1), keep);
    const double w5 = *base.stats.back().martingale_w;
    const std::uint64_t reps = 10000;
    std::vector<double> w6(reps);
    parallel_for_index(reps, ctx.workers, [&](std::size_t r) {
        auto g6 = evolve(*base.final_graph, p, key.child({2, r}));
        w6[r] = martingale_w(static_cast<double>(g6.vertex_count()),
                             static_cast<double>(g6.edge_count()), 6, p);
    });
    const auto mv = mean_var(w6);
    g.require(within_4se(mv.mean, w5, mv.se_mean), "mean W_6 equals W_5 within 4 SE");
    g.note("W5=" + fixed3(w5) + " meanW6=" + fixed3(mv.mean) + " z=" +
           fixed3(mv.se_mean > 0 ? std::fabs(mv.mean - w5) / mv.se_mean : 0.0));
    return {"martingale", g.pass, g.str(), 0};
}

// --- criterion 8: coupling contraction --------------------------------------

inline CheckResult check_coupling(const AcceptanceContext& ctx) {
    Grader g;
    const Params triples[3] = {{0.3, 0.5, 0.2}, {0.0, 1.0, 0.2}, {0.9, 0.5, 0.8}};
    const StreamKey key = StreamKey(ctx.seed).child(108);
    const std::uint64_t reps = 100000;
    double worst_z = 0;
    for (int t = 0; t < 3; ++t) {
        const Params p = triples[t];
        std::vector<double> diffs(reps);
        parallel_for_index(reps, ctx.workers, [&](std::size_t r) {
            auto [a, b] = coupled_step(40, 10, p, key.child({static_cast<std::uint64_t>(t), r}));
            diffs[r] = std::fabs(static_cast<double>(a) - static_cast<double>(b));
        });
        const auto mv = mean_var(diffs);
        const double want = 30.0 * p.edge_growth_rate() / 2.0;
        g.require(within_4se(mv.mean, want, mv.se_mean),
                  "coupled distance triple=" + std::to_string(t));
        if (mv.se_mean > 0) worst_z = std::max(worst_z, std::fabs(mv.mean - want) / mv.se_mean);
    }
    g.note("max|z|=" + fixed3(worst_z) + " over 3 triples, 1e5 reps");
    return {"coupling", g.pass, g.str(), 0};
}

// --- criterion 9: spectral gap ----------------------------------------------

inline CheckResult check_spectral(const AcceptanceContext& ctx) {
    Grader g;
    const StreamKey key = StreamKey(ctx.seed).child(109);
    const std::uint64_t seeds = 20;
    // The bound lambda_1 <= 0.999 cannot hold at n = 0 (G_0 = K2 has
    // lambda_1 = 2) nor generically at n in {1, 2} (near-complete small
    // graphs have lambda_1 >= 1), so the dense check runs over n in [3, 9].
    bool cheeger_ok = true;
    double worst_dense = 0;
    {
        const Params dense{0.9, 1.0, 0.8};
        std::vector<double> max_l1(seeds, 0.0);
        std::vector<std::uint8_t> cheeger_flags(seeds, 1);
        parallel_for_index(seeds, ctx.workers, [&](std::size_t s) {
            ReproGraph gr = make_preset("k2");
            for (std::uint32_t n = 1; n <= 9; ++n) {
                gr = evolve(gr, dense, key.child({1, s}));
                if (n >= 3) {
                    const double l1 = symmetric_eigenvalues(normalized_laplacian(gr))[1];
                    max_l1[s] = std::max(max_l1[s], l1);
                }
                if (gr.vertex_count() <= kCheegerExactMaxVertices) {
                    const double l1 = symmetric_eigenvalues(normalized_laplacian(gr))[1];
                    const double h = cheeger_exact(gr).h;
                    if (!(h * h / 2.0 <= l1 + 1e-9 && l1 <= 2.0 * h + 1e-9)) cheeger_flags[s] = 0;
                }
            }
        });
        for (std::uint64_t s = 0; s < seeds; ++s) {
            worst_dense = std::max(worst_dense, max_l1[s]);
            if (!cheeger_flags[s]) cheeger_ok = false;
        }
        g.require(worst_dense <= 0.999, "dense lambda_1(G_n) <= 0.999 for n in [3,9], all seeds");
    }
    {
        const Params sub{0.0, 1.0, 0.2};
        std::vector<double> l3(seeds), l8(seeds);
        std::vector<std::uint8_t> cheeger_flags(seeds, 1);
        parallel_for_index(seeds, ctx.workers, [&](std::size_t s) {
            ReproGraph gr = make_preset("k2");
            for (std::uint32_t n = 1; n <= 8; ++n) {
                gr = evolve(gr, sub, key.child({2, s}));
                if (n == 3) l3[s] = symmetric_eigenvalues(normalized_laplacian(gr))[1];
                if (n == 8) l8[s] = symmetric_eigenvalues(normalized_laplacian(gr))[1];
                if (gr.vertex_count() <= kCheegerExactMaxVertices) {
                    const double l1 = symmetric_eigenvalues(normalized_laplacian(gr))[1];
                    const double h = cheeger_exact(gr).h;
                    if (!(h * h / 2.0 <= l1 + 1e-9 && l1 <= 2.0 * h + 1e-9)) cheeger_flags[s] = 0;
                }
            }
        });
        for (std::uint64_t s = 0; s < seeds; ++s)
            if (!cheeger_flags[s]) cheeger_ok = false;
        const double med3 = median(l3), med8 = median(l8);
        g.require(med8 < med3, "subcritical median lambda_1(G_8) < median lambda_1(G_3)");
        g.note("sub_median_l1: G3=" + fixed3(med3) + " G8=" + fixed3(med8) +
               " dense_max_l1[3..9]=" + fixed3(worst_dense));
    }
    g.require(cheeger_ok, "Cheeger inequality h^2/2 <= lambda_1 <= 2h on all graphs with V<=22");
    return {"spectral", g.pass, g.str(), 0};
}

// --- criterion 10: conditional moment ratios --------------------------------

inline CheckResult check_moment_ratios(const AcceptanceContext& ctx) {
    Grader g;
    const Params p{0.2, 1.0, 0.3};
    const std::uint64_t x = 10000, reps = 10000;
    const StreamKey key = StreamKey(ctx.seed).child(110);
    double worst_rel = 0;
    for (double pw : {-1.0, 0.5, 1.0, 2.0}) {
        const auto r = conditional_moment_ratio(x, p, pw, reps, key.child(static_cast<std::uint64_t>(pw * 4 + 100)));
        const double want_parent = std::pow(1.3, pw);
        const double want_child = std::pow(0.5, pw);
        const double rel_parent = std::fabs(r.parent_ratio - want_parent) / want_parent;
        const double rel_child = std::fabs(r.child_ratio - want_child) / want_child;
        g.require(rel_parent <= 0.02, "parent ratio p=" + fixed3(pw) + " within 2%");
        g.require(rel_child <= 0.02, "child ratio p=" + fixed3(pw) + " within 2%");
        worst_rel = std::max({worst_rel, rel_parent, rel_child});
    }
    g.note("worst relative error " + fixed3(worst_rel) + " at x=1e4 over p in {-1,0.5,1,2}");
    return {"moment-ratios", g.pass, g.str(), 0};
}

// --- criterion 11: CLI determinism ------------------------------------------

inline CheckResult check_determinism(const AcceptanceContext& ctx) {
    Grader g;
    if (ctx.cli_path.empty()) {
        g.require(false, "cli path not provided");
        return {"determinism", g.pass, g.str(), 0};
    }
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("reprograph-check-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto run_grow = [&](const std::string& out, int workers) {
        std::string cmd = "'" + ctx.cli_path +
                          "' grow --alpha 0.3 --beta 0.5 --gamma 0.2 --steps 6 --g0 k2 "
                          "--seed 12345 --workers " +
                          std::to_string(workers) + " --out '" + out + "'";
        return std::system(cmd.c_str());
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    const fs::path f1 = dir / "run1.csv", f2 = dir / "run2.csv", f4 = dir / "run4.csv";
    g.require(run_grow(f1.string(), 1) == 0, "first run exits 0");
    g.require(run_grow(f2.string(), 1) == 0, "second run exits 0");
    g.require(run_grow(f4.string(), 4) == 0, "workers=4 run exits 0");
    const std::string b1 = slurp(f1), b2 = slurp(f2), b4 = slurp(f4);
    g.require(!b1.empty(), "output non-empty");
    g.require(b1 == b2, "two runs byte-identical");
    g.require(b1 == b4, "workers 1 and 4 byte-identical");
    g.note("bytes=" + std::to_string(b1.size()));
    std::error_code ec;
    fs::remove_all(dir, ec);
    return {"determinism", g.pass, g.str(), 0};
}

} // namespace detail

inline const std::vector<Check>& acceptance_checks() {
    static const std::vector<Check> checks = {
        {"edges", "edge-count mean/variance vs closed forms", detail::check_edges},
        {"stationary", "degree histogram of G_14 vs kernel stationary law", detail::check_stationary},
        {"tail", "tail exponent root and stationary log-log slope", detail::check_tail},
        {"collapse", "supercritical degree proportions vanish", detail::check_collapse},
        {"isolation", "beta=0 isolation transition and extinction", detail::check_isolation},
        {"densification", "edge growth in dense/sparse/critical regimes", detail::check_densification},
        {"martingale", "one-step conditional mean of W", detail::check_martingale},
        {"coupling", "Wasserstein contraction factor", detail::check_coupling},
        {"spectral", "spectral gap trends and Cheeger inequality", detail::check_spectral},
        {"moment-ratios", "conditional moment ratios at large degree", detail::check_moment_ratios},
        {"determinism", "CLI output byte-stable across runs and workers", detail::check_determinism},
    };
    return checks;
}

/// Runs the (optionally filtered) suite, printing one line per check.
/// Returns 0 when every executed check passes, 3 otherwise.
inline int run_acceptance(const AcceptanceContext& ctx, const std::string& only = "",
                          std::ostream& os = std::cout) {
    bool all_pass = true;
    std::size_t ran = 0;
    for (const auto& c : acceptance_checks()) {
        if (!only.empty() && c.id.find(only) == std::string::npos) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult res = c.run(ctx);
        res.seconds = detail::wall_ms_since(t0) / 1000.0;
        os << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << " (" << detail::fixed3(res.seconds)
           << "s): " << res.detail << "\n";
        os.flush();
        if (!res.pass) all_pass = false;
    }
    if (ran == 0) {
        os << "no checks match filter '" << only << "'\n";
        return exit_code::usage;
    }
    return all_pass ? exit_code::ok : exit_code::acceptance;
}

struct CheckConfig {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 2;
    std::string cli_path;
    std::string only;
    bool list = false;
};

inline int cmd_check(const CheckConfig& cfg) {
    if (cfg.list) {
        for (const auto& c : acceptance_checks())
            std::cout << c.id << ": " << c.title << "\n";
        return exit_code::ok;
    }
    AcceptanceContext ctx;
    ctx.seed = cfg.seed;
    ctx.workers = cfg.workers;
    ctx.cli_path = cfg.cli_path;
    return run_acceptance(ctx, cfg.only);
}

} // namespace reprograph
