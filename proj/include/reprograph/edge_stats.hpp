#pragma once

// Closed-form edge-count moments, edge-regime classification, the edge
// martingale, and the densification fit.  Everything here is a pure function
// of (n, params, V0, E0); the Monte Carlo counterparts live in the tests and
// the acceptance suite.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "reprograph/params.hpp"

namespace reprograph {

/// E(E_n) from E(E_{k+1}) = (1+2g+a) E(E_k) + 2^k b V0.
inline double expected_edges(std::uint32_t n, const Params& params, double v0, double e0) {
    params.validate();
    const double rate = params.edge_growth_rate();
    double m = e0;
    double pow2 = 1.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        m = rate * m + pow2 * params.beta * v0;
        pow2 *= 2.0;
    }
    return m;
}

/// Closed form of expected_edges for e0 = 0.  Uses the critical-point
/// expression 2^n * b V0 n / 2 when 2g + a = 1.
inline double expected_edges_closed(std::uint32_t n, const Params& params, double v0) {
    const double rate = params.edge_growth_rate();
    const double c = params.edge_criterion();
    if (std::fabs(c) < 1e-12)
        return std::pow(2.0, n) * (params.beta * v0 * n / 2.0);
    return params.beta * v0 * (std::pow(2.0, n) - std::pow(rate, n)) / (-c);
}

/// Var(E_n) by the law of total variance over the one-step conditional
/// moments: v(k+1) = m(k)(2g(1-g) + a(1-a)) + 2^k V0 b(1-b) + rate^2 v(k).
inline double variance_edges(std::uint32_t n, const Params& params, double v0, double e0) {
    params.validate();
    const double rate = params.edge_growth_rate();
    const double per_edge = 2.0 * params.gamma * (1.0 - params.gamma)
                          + params.alpha * (1.0 - params.alpha);
    const double per_vertex = params.beta * (1.0 - params.beta);
    double m = e0, v = 0.0, pow2 = 1.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        v = m * per_edge + pow2 * v0 * per_vertex + rate * rate * v;
        m = rate * m + pow2 * params.beta * v0;
        pow2 *= 2.0;
    }
    return v;
}

struct EdgeMoments {
    std::uint32_t n = 0;
    double mean_e = 0.0;
    double var_e = 0.0;
};

inline std::vector<EdgeMoments> edge_moment_table(std::uint32_t n_max, const Params& params,
                                                  double v0, double e0) {
    std::vector<EdgeMoments> out;
    out.reserve(n_max + 1);
    for (std::uint32_t n = 0; n <= n_max; ++n)
        out.push_back({n, expected_edges(n, params, v0, e0), variance_edges(n, params, v0, e0)});
    return out;
}

enum class EdgeRegime { sparse, critical, dense };

/// Regime of edge growth plus the matching limit descriptor:
/// sparse   — E_n / 2^n      -> V0 b / (1 - 2g - a)
/// critical — E_n / (2^n n)  -> V0 b / 2
/// dense    — densification exponent log(1+2g+a) / log 2
struct EdgeRegimeReport {
    EdgeRegime regime;
    double limit_value;
    std::string description;
};

inline const char* to_string(EdgeRegime r) {
    switch (r) {
        case EdgeRegime::sparse: return "sparse";
        case EdgeRegime::critical: return "critical";
        default: return "dense";
    }
}

inline EdgeRegimeReport classify_edge_regime(const Params& params, double v0 = 1.0) {
    params.validate();
    const double c = params.edge_criterion();
    if (std::fabs(c) < 1e-12)
        return {EdgeRegime::critical, v0 * params.beta / 2.0, "E_n/(2^n n) -> V0*beta/2"};
    if (c < 0.0)
        return {EdgeRegime::sparse, v0 * params.beta / (-c), "E_n/2^n -> V0*beta/(1-2*gamma-alpha)"};
    return {EdgeRegime::dense, std::log(params.edge_growth_rate()) / std::log(2.0),
            "densification exponent log(1+2*gamma+alpha)/log 2"};
}

/// W_n = (V_n + (2g+a-1)/b * E_n) / (1+2g+a)^n.  Mean-preserved along the
/// growth, so one-step conditional averages reproduce the previous value.
inline double martingale_w(double vertices, double edges, std::uint32_t n, const Params& params) {
    if (params.beta <= 0.0)
        throw std::invalid_argument("martingale_w: requires beta > 0");
    const double c = params.edge_criterion() / params.beta;
    return (vertices + c * edges) / std::pow(params.edge_growth_rate(), n);
}

/// Least-squares slope of log E against log V over the last half of the
/// provided generations.  Needs at least 4 usable generations with E > 0.
inline double densification_fit(std::span<const double> vertices, std::span<const double> edges) {
    if (vertices.size() != edges.size())
        throw std::invalid_argument("densification_fit: size mismatch");
    const std::size_t n = vertices.size();
    const std::size_t start = n / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = start; i < n; ++i) {
        if (edges[i] <= 0.0)
            throw std::domain_error("densification_fit: zero edge count in fit window");
        xs.push_back(std::log(vertices[i]));
        ys.push_back(std::log(edges[i]));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("densification_fit: need at least 4 generations in window");
    bool all_equal = true;
    for (double y : ys)
        if (y != ys.front()) all_equal = false;
    if (all_equal)
        throw std::domain_error("densification_fit: degenerate (constant edge counts)");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

} // namespace reprograph
