#pragma once

// The degree Markov chain: the degree X_n of a uniformly followed lineage
// vertex evolves as
//     X' = xi * X + (1 - xi) * W + Y + Z,
// with xi ~ Ber(1/2) (parent or child step), Y ~ Bin(X, gamma),
// W ~ Bin(X, alpha), Z ~ Ber(beta), all independent given X.
//
// This module simulates the chain, builds its exact truncated transition
// kernel by binomial convolution, solves for the stationary distribution,
// classifies the degree regime, and computes the tail exponent p* solving
// (1+gamma)^p + (alpha+gamma)^p = 2.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reprograph/params.hpp"
#include "reprograph/random.hpp"

namespace reprograph {

namespace chain_tag {
constexpr std::uint64_t xi = 10;
constexpr std::uint64_t z = 11;
constexpr std::uint64_t y = 12;
constexpr std::uint64_t w = 13;
} // namespace chain_tag

/// One transition of the degree chain.
inline std::uint64_t chain_step(std::uint64_t x, const Params& params, const StreamKey& key) {
    const int xi = bernoulli(key.child(chain_tag::xi), 0.5);
    const std::uint64_t z = static_cast<std::uint64_t>(bernoulli(key.child(chain_tag::z), params.beta));
    const std::uint64_t y = binomial(key.child(chain_tag::y), x, params.gamma);
    if (xi) return x + y + z;
    return binomial(key.child(chain_tag::w), x, params.alpha) + y + z;
}

/// One transition applied simultaneously to two states, sharing xi, Z and
/// the indexed Bernoulli trials behind Y and W.  Both coordinates follow the
/// chain marginally; the shared trials give the Wasserstein contraction
/// E|X' - Xhat'| = |x - xhat| (1 + 2 gamma + alpha) / 2 and preserve order.
inline std::pair<std::uint64_t, std::uint64_t> coupled_step(std::uint64_t x, std::uint64_t x_hat,
                                                            const Params& params,
                                                            const StreamKey& key) {
    const int xi = bernoulli(key.child(chain_tag::xi), 0.5);
    const std::uint64_t z = static_cast<std::uint64_t>(bernoulli(key.child(chain_tag::z), params.beta));
    const StreamKey ky = key.child(chain_tag::y);
    const StreamKey kw = key.child(chain_tag::w);
    auto advance = [&](std::uint64_t s) {
        const std::uint64_t ys = binomial(ky, s, params.gamma);
        if (xi) return s + ys + z;
        return binomial(kw, s, params.alpha) + ys + z;
    };
    return {advance(x), advance(x_hat)};
}

/// Trajectory x_0, x_1, ..., x_steps.
inline std::vector<std::uint64_t> chain_trajectory(std::uint64_t x0, const Params& params,
                                                   std::uint64_t steps, const StreamKey& key) {
    std::vector<std::uint64_t> xs;
    xs.reserve(steps + 1);
    xs.push_back(x0);
    std::uint64_t x = x0;
    for (std::uint64_t t = 0; t < steps; ++t) {
        x = chain_step(x, params, key.child(t));
        xs.push_back(x);
    }
    return xs;
}

// ---------------------------------------------------------------------------
// Exact truncated kernel

/// Probability mass function on first, first+1, ..., first+p.size()-1.
struct Pmf {
    std::uint64_t first = 0;
    std::vector<double> p;
};

/// Binomial(n, prob) pmf, windowed to +-12 sigma around the mean (tail loss
/// below 1e-15, far inside the kernel's 1e-12 row-sum tolerance).
inline Pmf binomial_pmf(std::uint64_t n, double prob) {
    if (n == 0 || prob <= 0.0) return {0, {1.0}};
    if (prob >= 1.0) return {n, {1.0}};
    const double mu = static_cast<double>(n) * prob;
    const double sigma = std::sqrt(mu * (1.0 - prob));
    const double span = 12.0 * sigma + 4.0;
    const std::uint64_t lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(mu - span)));
    const std::uint64_t hi = std::min(n, static_cast<std::uint64_t>(std::ceil(mu + span)));
    std::uint64_t mode = static_cast<std::uint64_t>((static_cast<double>(n) + 1.0) * prob);
    mode = std::min(std::max(mode, lo), hi);

    Pmf out;
    out.first = lo;
    out.p.assign(hi - lo + 1, 0.0);
    const double log_mode = std::lgamma(static_cast<double>(n) + 1.0) -
                            std::lgamma(static_cast<double>(mode) + 1.0) -
                            std::lgamma(static_cast<double>(n - mode) + 1.0) +
                            static_cast<double>(mode) * std::log(prob) +
                            static_cast<double>(n - mode) * std::log1p(-prob);
    out.p[mode - lo] = std::exp(log_mode);
    const double odds = prob / (1.0 - prob);
    for (std::uint64_t k = mode; k < hi; ++k)
        out.p[k + 1 - lo] = out.p[k - lo] * (static_cast<double>(n - k) / static_cast<double>(k + 1)) * odds;
    for (std::uint64_t k = mode; k > lo; --k)
        out.p[k - 1 - lo] = out.p[k - lo] * (static_cast<double>(k) / static_cast<double>(n - k + 1)) / odds;
    return out;
}

inline Pmf bernoulli_pmf(double prob) {
    if (prob <= 0.0) return {0, {1.0}};
    if (prob >= 1.0) return {1, {1.0}};
    return {0, {1.0 - prob, prob}};
}

inline Pmf convolve(const Pmf& a, const Pmf& b) {
    Pmf out;
    out.first = a.first + b.first;
    out.p.assign(a.p.size() + b.p.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        const double ai = a.p[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.p.size(); ++j) out.p[i + j] += ai * b.p[j];
    }
    return out;
}

/// Row of the truncated kernel: support begins at `first`; any transition
/// probability to states >= D is lumped into the last slot.
struct KernelRow {
    std::uint32_t first = 0;
    std::vector<double> p;
};

struct DegreeKernel {
    Params params;
    std::uint32_t truncation = 0;  // states 0..truncation, top state lumped
    std::vector<KernelRow> rows;

    /// Dense length-(truncation+1) expansion of row x.
    std::vector<double> dense_row(std::uint32_t x) const {
        std::vector<double> out(truncation + 1, 0.0);
        const KernelRow& r = rows[x];
        for (std::size_t j = 0; j < r.p.size(); ++j) out[r.first + j] += r.p[j];
        return out;
    }
};

/// Exact one-step law from state x: equal mixture of the parent branch
/// x + Y + Z and the child branch W + Y + Z, assembled onto 0..D.
inline DegreeKernel build_kernel(const Params& params, std::uint32_t truncation) {
    params.validate();
    if (truncation < 1) throw std::invalid_argument("build_kernel: truncation must be >= 1");
    DegreeKernel kernel;
    kernel.params = params;
    kernel.truncation = truncation;
    kernel.rows.resize(truncation + 1);
    const Pmf zpmf = bernoulli_pmf(params.beta);
    for (std::uint32_t x = 0; x <= truncation; ++x) {
        const Pmf ypmf = binomial_pmf(x, params.gamma);
        const Pmf yz = convolve(ypmf, zpmf);
        Pmf parent = yz;
        parent.first += x;
        const Pmf child = convolve(binomial_pmf(x, params.alpha), yz);

        const std::uint64_t lo = std::min<std::uint64_t>(child.first, parent.first);
        const std::uint64_t cap = truncation;
        KernelRow row;
        row.first = static_cast<std::uint32_t>(std::min(lo, cap));
        const std::uint64_t hi = std::min<std::uint64_t>(
            cap, std::max(parent.first + parent.p.size(), child.first + child.p.size()) - 1);
        row.p.assign(hi - row.first + 1, 0.0);
        auto add = [&](const Pmf& pmf) {
            for (std::size_t j = 0; j < pmf.p.size(); ++j) {
                std::uint64_t state = pmf.first + j;
                if (state > cap) state = cap;
                row.p[state - row.first] += 0.5 * pmf.p[j];
            }
        };
        add(parent);
        add(child);
        kernel.rows[x] = std::move(row);
    }
    return kernel;
}

struct StationaryResult {
    std::vector<double> pi;       // length truncation + 1
    std::uint64_t iterations = 0;
    double residual = 0.0;        // ||pi P - pi||_1 at return
    double lumped_mass = 0.0;     // pi at the truncation state
    std::vector<std::string> warnings;
};

/// Power iteration from a point mass at 0 until ||pi P - pi||_1 < tol.
/// Refuses alpha = 1 or gamma = 1 (the chain is then non-decreasing and has
/// no stationary distribution); other doubtful regimes only warn.
inline StationaryResult stationary_distribution(const DegreeKernel& kernel, double tol = 1e-12,
                                                std::uint64_t max_iterations = 200000) {
    const Params& params = kernel.params;
    if (params.alpha >= 1.0 || params.gamma >= 1.0)
        throw std::invalid_argument(
            "stationary_distribution: chain is non-decreasing at alpha=1 or gamma=1");
    StationaryResult res;
    if (params.degree_criterion() >= 1.0)
        res.warnings.push_back(
            "degree criterion (1+gamma)(alpha+gamma) >= 1: no stationary distribution is "
            "guaranteed; result reflects the truncated chain only");
    if (params.beta == 0.0)
        res.warnings.push_back("beta = 0: state 0 is absorbing; stationary law is degenerate");

    const std::size_t size = kernel.truncation + 1;
    std::vector<double> pi(size, 0.0), next(size, 0.0);
    pi[0] = 1.0;
    for (std::uint64_t it = 1; it <= max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t x = 0; x < size; ++x) {
            const double px = pi[x];
            if (px == 0.0) continue;
            const KernelRow& row = kernel.rows[x];
            for (std::size_t j = 0; j < row.p.size(); ++j) next[row.first + j] += px * row.p[j];
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < size; ++i) diff += std::fabs(next[i] - pi[i]);
        pi.swap(next);
        if (diff < tol) {
            res.pi = std::move(pi);
            res.iterations = it;
            res.residual = diff;
            res.lumped_mass = res.pi.back();
            return res;
        }
    }
    throw std::runtime_error("stationary_distribution: no convergence within iteration cap");
}

struct AdaptiveStationaryOptions {
    double tol = 1e-12;              // power-iteration residual
    double lump_tol = 1e-9;          // target mass at the truncation state
    std::uint32_t initial_truncation = 64;
    std::uint32_t max_truncation = 8192;
};

struct AdaptiveStationaryResult {
    DegreeKernel kernel;
    StationaryResult stationary;
    bool lump_tol_met = false;
};

/// Doubles the truncation until the stationary mass lumped at the top state
/// drops below lump_tol (or the truncation cap is reached, with a warning).
inline AdaptiveStationaryResult stationary_adaptive(const Params& params,
                                                    AdaptiveStationaryOptions opts = {}) {
    AdaptiveStationaryResult out;
    for (std::uint32_t d = opts.initial_truncation;; d *= 2) {
        out.kernel = build_kernel(params, d);
        out.stationary = stationary_distribution(out.kernel, opts.tol);
        if (out.stationary.lumped_mass < opts.lump_tol) {
            out.lump_tol_met = true;
            return out;
        }
        if (d >= opts.max_truncation) {
            out.stationary.warnings.push_back(
                "truncation cap reached with lumped mass " +
                std::to_string(out.stationary.lumped_mass) +
                "; heavy-tailed regimes need a larger --truncation for this tolerance");
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// Regimes, tail exponent, moments

enum class DegreeRegime { subcritical, critical, supercritical };

inline const char* to_string(DegreeRegime r) {
    switch (r) {
        case DegreeRegime::subcritical: return "subcritical";
        case DegreeRegime::critical: return "critical";
        default: return "supercritical";
    }
}

/// Sign of (1+gamma)(alpha+gamma) - 1, with exact-boundary detection.
inline DegreeRegime classify_degree_regime(const Params& params, double boundary_tol = 1e-12) {
    params.validate();
    const double c = params.degree_criterion() - 1.0;
    if (std::fabs(c) <= boundary_tol) return DegreeRegime::critical;
    return c < 0.0 ? DegreeRegime::subcritical : DegreeRegime::supercritical;
}

/// Tail exponent p* solving (1+gamma)^p + (alpha+gamma)^p = 2:
///   - subcritical with gamma > 0: the unique positive root (bisection),
///   - criterion >= 1: returns 0 (no positive moment is guaranteed finite),
///   - gamma = 0 below criticality: returns nullopt (all moments finite).
inline std::optional<double> tail_exponent(const Params& params) {
    params.validate();
    if (params.degree_criterion() >= 1.0 - 1e-15) return 0.0;
    if (params.gamma <= 0.0) return std::nullopt;
    auto f = [&](double p) {
        return std::pow(1.0 + params.gamma, p) + std::pow(params.alpha + params.gamma, p) - 2.0;
    };
    double lo = 1e-6, hi = 64.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 0x1p53) throw std::runtime_error("tail_exponent: bracket expansion failed");
    }
    for (int it = 0; it < 400 && (hi - lo) > 1e-10 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// p-th moment of a distribution on {0, 1, 2, ...} given as a vector.
inline double moment(const std::vector<double>& dist, double p) {
    if (p < 0.0) throw std::invalid_argument("moment: requires p >= 0");
    double s = 0.0;
    for (std::size_t x = 1; x < dist.size(); ++x)
        s += std::pow(static_cast<double>(x), p) * dist[x];
    if (p == 0.0) s += dist.empty() ? 0.0 : dist[0];
    return s;
}

/// Empirical p-th moment of a sample.
inline double moment(const std::vector<std::uint64_t>& sample, double p) {
    if (p < 0.0) throw std::invalid_argument("moment: requires p >= 0");
    double s = 0.0;
    for (std::uint64_t x : sample) s += std::pow(static_cast<double>(x), p);
    return s / static_cast<double>(sample.size());
}

struct ConditionalMomentRatios {
    double parent_ratio = 0.0;  // E[((1 + x + Y + Z)/(1 + x))^p], -> (1+gamma)^p
    double parent_se = 0.0;
    double child_ratio = 0.0;   // E[((1 + W + Y + Z)/(1 + x))^p], -> (alpha+gamma)^p
    double child_se = 0.0;
};

/// Monte Carlo estimates of the two conditional moment ratios at X_n = x.
inline ConditionalMomentRatios conditional_moment_ratio(std::uint64_t x, const Params& params,
                                                        double p, std::uint64_t reps,
                                                        const StreamKey& key) {
    if (x < 1) throw std::invalid_argument("conditional_moment_ratio: x must be >= 1");
    if (reps < 2) throw std::invalid_argument("conditional_moment_ratio: reps must be >= 2");
    const double denom = 1.0 + static_cast<double>(x);
    double s1 = 0, q1 = 0, s2 = 0, q2 = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        const StreamKey kr = key.child(r);
        const double y = static_cast<double>(binomial(kr.child(chain_tag::y), x, params.gamma));
        const double w = static_cast<double>(binomial(kr.child(chain_tag::w), x, params.alpha));
        const double z = static_cast<double>(bernoulli(kr.child(chain_tag::z), params.beta));
        const double r1 = std::pow((1.0 + static_cast<double>(x) + y + z) / denom, p);
        const double r2 = std::pow((1.0 + w + y + z) / denom, p);
        s1 += r1;
        q1 += r1 * r1;
        s2 += r2;
        q2 += r2 * r2;
    }
    const double n = static_cast<double>(reps);
    ConditionalMomentRatios out;
    out.parent_ratio = s1 / n;
    out.child_ratio = s2 / n;
    out.parent_se = std::sqrt(std::max(0.0, (q1 / n - out.parent_ratio * out.parent_ratio) / (n - 1)));
    out.child_se = std::sqrt(std::max(0.0, (q2 / n - out.child_ratio * out.child_ratio) / (n - 1)));
    return out;
}

} // namespace reprograph
