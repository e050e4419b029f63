#pragma once

#include <cstdint>
#include <stdexcept>

namespace reprograph {

/// Model parameters: the probabilities of the three random edge rules.
///   alpha — edge between two children of neighbouring vertices
///   beta  — edge between a child and its own parent
///   gamma — edge between a child and a neighbour of its parent
struct Params {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    void validate() const {
        auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!ok(alpha) || !ok(beta) || !ok(gamma))
            throw std::invalid_argument("params: alpha, beta, gamma must lie in [0,1]");
    }

    /// Per-generation growth factor of the expected edge count, 1 + 2*gamma + alpha.
    double edge_growth_rate() const { return 1.0 + 2.0 * gamma + alpha; }

    /// 2*gamma + alpha - 1; sign separates the sparse / dense edge regimes.
    double edge_criterion() const { return 2.0 * gamma + alpha - 1.0; }

    /// (1 + gamma) * (alpha + gamma); against 1 separates the degree regimes.
    double degree_criterion() const { return (1.0 + gamma) * (alpha + gamma); }
};

/// Thrown when a run would exceed the configured vertex or edge caps.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hard size limits for graph growth; growth is exponential by design, so
/// runs hit these as a clean error instead of exhausting memory.
struct Caps {
    std::uint64_t max_vertices = 1ull << 22;
    std::uint64_t max_edges = 1ull << 27;
};

} // namespace reprograph
