#pragma once

// The beta = 0 specialization.  With no parent-child edges the degree chain
// absorbs at 0 and behaves as a two-environment branching process: the
// environment variable is the parent/child coin xi, and the conditional
// offspring mean is 1 + gamma on parent steps and alpha + gamma on child
// steps.  Extinction is almost sure iff
//     log(1 + gamma)/2 + log(alpha + gamma)/2 <= 0,
// i.e. (1 + gamma)(alpha + gamma) <= 1.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "reprograph/degree_chain.hpp"
#include "reprograph/graph.hpp"
#include "reprograph/parallel.hpp"

namespace reprograph {

enum class BpreOutcome { extinct_almost_surely, survives_with_positive_probability };

inline const char* to_string(BpreOutcome o) {
    return o == BpreOutcome::extinct_almost_surely ? "extinct-as" : "survives-wp-q";
}

struct BpreVerdict {
    double criterion_value = 0.0;  // log(1+gamma)/2 + log(alpha+gamma)/2
    BpreOutcome verdict = BpreOutcome::extinct_almost_surely;
    bool boundary = false;             // criterion numerically zero
    bool degenerate_boundary = false;  // constant chain (alpha = 1, gamma = 0)
    std::optional<double> q_estimate;  // survival probability, when estimated
    double q_half_width = 0.0;
};

/// Classifies the beta = 0 chain by the sign of the criterion; the boundary
/// counts as extinction except at the degenerate corner alpha = 1, gamma = 0,
/// where the chain is constant and never dies (flagged, not classified away).
inline BpreVerdict classify_bpre(const Params& params) {
    params.validate();
    if (params.beta != 0.0) throw std::invalid_argument("classify_bpre: requires beta = 0");
    BpreVerdict v;
    const double ag = params.alpha + params.gamma;
    v.criterion_value = ag <= 0.0 ? -std::numeric_limits<double>::infinity()
                                  : 0.5 * std::log1p(params.gamma) + 0.5 * std::log(ag);
    v.boundary = std::fabs(v.criterion_value) <= 1e-12;
    v.verdict = v.criterion_value <= 1e-12 ? BpreOutcome::extinct_almost_surely
                                           : BpreOutcome::survives_with_positive_probability;
    v.degenerate_boundary = v.boundary && params.alpha >= 1.0 && params.gamma <= 0.0;
    return v;
}

struct ExtinctionEstimate {
    double probability = 0.0;   // fraction of replicates absorbed at 0 by the horizon
    double half_width = 0.0;    // 95% binomial confidence half-width
    std::uint64_t horizon = 0;
    std::uint64_t reps = 0;
    std::uint64_t escaped = 0;  // replicates that crossed the escape cap
};

/// Fraction of chains from x0 absorbed at 0 within the horizon.  States at
/// or above escape_cap are counted as surviving and not simulated further:
/// the return probability from there is below 1e-300 for any horizon.
/// Horizon-based estimates are lower bounds on eventual extinction.
inline ExtinctionEstimate extinction_probability(const Params& params, std::uint64_t x0,
                                                 std::uint64_t horizon, std::uint64_t reps,
                                                 const StreamKey& key,
                                                 std::uint64_t escape_cap = 4096,
                                                 unsigned workers = 1) {
    params.validate();
    if (params.beta != 0.0)
        throw std::invalid_argument("extinction_probability: requires beta = 0");
    if (x0 < 1) throw std::invalid_argument("extinction_probability: x0 must be >= 1");
    if (reps < 1) throw std::invalid_argument("extinction_probability: reps must be >= 1");

    std::vector<std::uint8_t> extinct(reps, 0), escaped(reps, 0);
    parallel_for_index(reps, workers, [&](std::size_t r) {
        const StreamKey kr = key.child(static_cast<std::uint64_t>(r));
        std::uint64_t x = x0;
        for (std::uint64_t t = 0; t < horizon; ++t) {
            x = chain_step(x, params, kr.child(t));
            if (x == 0) {
                extinct[r] = 1;
                return;
            }
            if (x >= escape_cap) {
                escaped[r] = 1;
                return;
            }
        }
    });
    ExtinctionEstimate est;
    est.horizon = horizon;
    est.reps = reps;
    for (std::uint64_t r = 0; r < reps; ++r) {
        est.probability += extinct[r];
        est.escaped += escaped[r];
    }
    est.probability /= static_cast<double>(reps);
    est.half_width =
        1.96 * std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(reps));
    return est;
}

struct IsolationPoint {
    std::uint32_t step = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Full-graph isolated-fraction curve averaged over replicates.  With
/// beta = 0 the per-path sequence is non-decreasing: an isolated vertex
/// spawns an isolated child and continuation.
inline std::vector<IsolationPoint> isolation_curve(const ReproGraph& g0, const Params& params,
                                                   std::uint32_t steps, std::uint64_t reps,
                                                   const StreamKey& key, const Caps& caps = {},
                                                   unsigned workers = 1) {
    params.validate();
    if (params.beta != 0.0) throw std::invalid_argument("isolation_curve: requires beta = 0");
    if (reps < 1) throw std::invalid_argument("isolation_curve: reps must be >= 1");

    std::vector<std::vector<double>> fractions(reps);
    parallel_for_index(reps, workers, [&](std::size_t r) {
        GrowOptions opts;
        opts.caps = caps;
        auto res = grow(g0, params, steps, key.child(static_cast<std::uint64_t>(r)), opts);
        fractions[r].reserve(res.stats.size());
        for (const auto& s : res.stats) fractions[r].push_back(s.isolated_fraction);
    });

    std::vector<IsolationPoint> curve(steps + 1);
    for (std::uint32_t n = 0; n <= steps; ++n) {
        IsolationPoint pt;
        pt.step = n;
        pt.min = 1.0;
        pt.max = 0.0;
        for (std::uint64_t r = 0; r < reps; ++r) {
            const double f = fractions[r][n];
            pt.mean += f;
            pt.min = std::min(pt.min, f);
            pt.max = std::max(pt.max, f);
        }
        pt.mean /= static_cast<double>(reps);
        curve[n] = pt;
    }
    return curve;
}

} // namespace reprograph
