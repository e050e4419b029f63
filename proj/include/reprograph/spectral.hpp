#pragma once

// Normalized-Laplacian spectrum and Cheeger constants.
//
// L = I - D^(-1/2) A D^(-1/2) on vertices of positive degree; the diagonal
// entry of an isolated vertex is 0.  Eigenvalues lie in [0, 2] with
// lambda_0 = 0; lambda_1 denotes the second-smallest eigenvalue throughout.

#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "reprograph/eigen.hpp"
#include "reprograph/graph.hpp"

namespace reprograph {

inline SymMatrix normalized_laplacian(const ReproGraph& g) {
    const std::size_t n = g.vertex_count();
    SymMatrix L = SymMatrix::zero(n);
    std::vector<double> inv_sqrt_deg(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        const auto d = g.degree(static_cast<std::uint32_t>(u));
        if (d > 0) {
            L.at(u, u) = 1.0;
            inv_sqrt_deg[u] = 1.0 / std::sqrt(static_cast<double>(d));
        }
    }
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v : g.neighbors(u))
            L.at(u, v) = -inv_sqrt_deg[u] * inv_sqrt_deg[v];
    return L;
}

/// Vertex labels of the connected components, plus their count.
struct Components {
    std::vector<std::uint32_t> label;
    std::uint32_t count = 0;
};

inline Components connected_components(const ReproGraph& g) {
    const std::uint32_t n = g.vertex_count();
    Components comp;
    comp.label.assign(n, UINT32_MAX);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp.label[s] != UINT32_MAX) continue;
        std::queue<std::uint32_t> q;
        q.push(s);
        comp.label[s] = comp.count;
        while (!q.empty()) {
            const std::uint32_t u = q.front();
            q.pop();
            for (std::uint32_t v : g.neighbors(u))
                if (comp.label[v] == UINT32_MAX) {
                    comp.label[v] = comp.count;
                    q.push(v);
                }
        }
        ++comp.count;
    }
    return comp;
}

inline bool is_connected(const ReproGraph& g) {
    return g.vertex_count() <= 1 || connected_components(g).count == 1;
}

struct CheegerCut {
    double h = 0.0;
    std::vector<std::uint32_t> side;  // achieving subset (smaller volume side)
};

constexpr std::uint32_t kCheegerExactMaxVertices = 22;

/// Exhaustive Cheeger constant: min over nonempty proper S with
/// vol(S) <= vol(G)/2 of e(S, S-bar)/vol(S).  Disconnected input yields
/// h = 0 with a component as witness.
inline CheegerCut cheeger_exact(const ReproGraph& g) {
    const std::uint32_t n = g.vertex_count();
    if (n > kCheegerExactMaxVertices)
        throw std::invalid_argument("cheeger_exact: graph too large for exhaustive search");
    if (n < 2) throw std::invalid_argument("cheeger_exact: need at least 2 vertices");

    auto comps = connected_components(g);
    if (comps.count > 1) {
        CheegerCut cut;
        cut.h = 0.0;
        for (std::uint32_t u = 0; u < n; ++u)
            if (comps.label[u] == 0) cut.side.push_back(u);
        return cut;
    }

    std::vector<std::uint32_t> mask(n, 0);
    std::vector<std::uint32_t> deg(n, 0);
    std::uint64_t vol_total = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        deg[u] = g.degree(u);
        vol_total += deg[u];
        for (std::uint32_t v : g.neighbors(u)) mask[u] |= 1u << v;
    }

    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_set = 0;
    const std::uint32_t all = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    // Fix vertex 0 in S; the complement covers the other half of the subsets.
    const std::uint32_t half_count = 1u << (n - 1);
    for (std::uint32_t bits = 0; bits < half_count; ++bits) {
        const std::uint32_t S = (bits << 1) | 1u;
        if (S == all) continue;
        std::uint64_t volS = 0, cross = 0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (!(S >> u & 1u)) continue;
            volS += deg[u];
            cross += static_cast<std::uint32_t>(__builtin_popcount(mask[u] & ~S));
        }
        const std::uint64_t vol_min = std::min(volS, vol_total - volS);
        if (vol_min == 0) continue;
        const double ratio = static_cast<double>(cross) / static_cast<double>(vol_min);
        if (ratio < best) {
            best = ratio;
            best_set = volS <= vol_total - volS ? S : (all & ~S);
        }
    }
    CheegerCut cut;
    cut.h = best;
    for (std::uint32_t u = 0; u < n; ++u)
        if (best_set >> u & 1u) cut.side.push_back(u);
    return cut;
}

/// Sweep-cut upper bound on the Cheeger constant: orders vertices by the
/// degree-scaled Fiedler vector and takes the best prefix cut.
inline double cheeger_sweep(const ReproGraph& g, const std::vector<double>& fiedler) {
    const std::uint32_t n = g.vertex_count();
    if (fiedler.size() != n) throw std::invalid_argument("cheeger_sweep: vector size mismatch");
    if (!is_connected(g)) throw std::invalid_argument("cheeger_sweep: graph must be connected");
    if (n < 2) throw std::invalid_argument("cheeger_sweep: need at least 2 vertices");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(n);
    for (std::uint32_t u = 0; u < n; ++u)
        score[u] = fiedler[u] / std::sqrt(static_cast<double>(g.degree(u)));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return score[a] < score[b]; });

    std::uint64_t vol_total = 2 * g.edge_count();
    std::vector<char> in_s(n, 0);
    std::uint64_t volS = 0;
    std::int64_t cross = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t k = 0; k + 1 < n; ++k) {
        const std::uint32_t u = order[k];
        in_s[u] = 1;
        volS += g.degree(u);
        cross += g.degree(u);
        for (std::uint32_t v : g.neighbors(u))
            if (in_s[v]) cross -= 2;
        const std::uint64_t vol_min = std::min(volS, vol_total - volS);
        if (vol_min == 0) continue;
        best = std::min(best, static_cast<double>(cross) / static_cast<double>(vol_min));
    }
    return best;
}

struct SpectralReport {
    std::uint32_t n = 0;          // generation index
    std::uint64_t vertices = 0;
    double lambda_1 = 0.0;        // second-smallest eigenvalue
    double lambda_max = 0.0;
    double spectral_radius = 0.0; // max(|lambda_1 - 1|, |lambda_max - 1|)
    std::optional<double> cheeger_exact;  // only when V <= 22 and connected
    double cheeger_sweep_upper = 0.0;
};

/// Assembles eigenvalue and Cheeger quantities for one graph.  The sweep
/// bound requires connectivity (guaranteed for beta = 1 from a connected
/// G_0); for a disconnected graph both Cheeger quantities degenerate to 0.
inline SpectralReport spectral_report(const ReproGraph& g) {
    if (g.vertex_count() < 2)
        throw std::invalid_argument("spectral_report: need at least 2 vertices");
    SpectralReport rep;
    rep.n = g.generation();
    rep.vertices = g.vertex_count();

    const SymMatrix L = normalized_laplacian(g);
    const bool connected = is_connected(g);
    if (connected) {
        const EigenSystem sys = symmetric_eigensystem(L);
        rep.lambda_1 = sys.values[1];
        rep.lambda_max = sys.values.back();
        rep.cheeger_sweep_upper = cheeger_sweep(g, sys.vector(1));
    } else {
        const auto vals = symmetric_eigenvalues(L);
        rep.lambda_1 = vals[1];
        rep.lambda_max = vals.back();
        rep.cheeger_sweep_upper = 0.0;
    }
    rep.spectral_radius = std::max(std::fabs(rep.lambda_1 - 1.0), std::fabs(rep.lambda_max - 1.0));
    if (g.vertex_count() <= kCheegerExactMaxVertices)
        rep.cheeger_exact = cheeger_exact(g).h;
    return rep;
}

} // namespace reprograph
