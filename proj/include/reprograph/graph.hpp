#pragma once

// The reproducing graph G_n and its one-generation evolution step.
//
// Every vertex u of G_n yields two vertices of G_{n+1}: its continuation u1
// (same index u) and its child u0 (index u + V_n).  Edges of G_{n+1}:
//   (a) u1–v1  whenever u–v in G_n (existing edges are retained),
//   (b) u0–u1  with probability beta, one trial per vertex,
//   (c) u0–v1  with probability gamma per ordered pair (u,v) with u–v in G_n,
//   (d) u0–v0  with probability alpha per unordered pair {u,v} with u–v in G_n.
// Each trial draws from its own StreamKey tagged (generation, rule, entity),
// so evolution is reproducible and order-independent.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "reprograph/edge_stats.hpp"
#include "reprograph/parallel.hpp"
#include "reprograph/params.hpp"
#include "reprograph/random.hpp"

namespace reprograph {

namespace rule_tag {
constexpr std::uint64_t parent_child = 1;       // rule (b)
constexpr std::uint64_t child_continuation = 2; // rule (c)
constexpr std::uint64_t child_child = 3;        // rule (d)
} // namespace rule_tag

/// Immutable simple undirected graph in CSR form, tagged with its
/// generation index and the size of G_0.
class ReproGraph {
public:
    ReproGraph() = default;

    /// Builds from an edge list.  Rejects self-loops and duplicate edges.
    static ReproGraph from_edges(std::uint32_t vertex_count,
                                 const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                 std::uint32_t generation = 0,
                                 std::uint32_t v0 = 0) {
        ReproGraph g;
        g.n_ = generation;
        g.v0_ = v0 == 0 ? vertex_count >> generation : v0;
        g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
        for (auto [a, b] : edges) {
            if (a == b) throw std::invalid_argument("graph: self-loop");
            if (a >= vertex_count || b >= vertex_count)
                throw std::invalid_argument("graph: vertex index out of range");
            ++g.offsets_[a + 1];
            ++g.offsets_[b + 1];
        }
        for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
        g.adj_.resize(g.offsets_.back());
        std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [a, b] : edges) {
            g.adj_[cursor[a]++] = b;
            g.adj_[cursor[b]++] = a;
        }
        for (std::uint32_t u = 0; u < vertex_count; ++u) {
            auto lo = g.adj_.begin() + g.offsets_[u];
            auto hi = g.adj_.begin() + g.offsets_[u + 1];
            std::sort(lo, hi);
            if (std::adjacent_find(lo, hi) != hi)
                throw std::invalid_argument("graph: duplicate edge");
        }
        return g;
    }

    std::uint32_t generation() const { return n_; }
    std::uint32_t v0() const { return v0_; }
    std::uint32_t vertex_count() const {
        return static_cast<std::uint32_t>(offsets_.size()) - 1;
    }
    std::uint64_t edge_count() const { return adj_.size() / 2; }

    std::uint32_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }

    std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::map<std::uint32_t, std::uint64_t> degree_histogram() const {
        std::map<std::uint32_t, std::uint64_t> h;
        for (std::uint32_t u = 0; u < vertex_count(); ++u) ++h[degree(u)];
        return h;
    }

    double isolated_fraction() const {
        if (vertex_count() == 0) return 0.0;
        std::uint64_t isolated = 0;
        for (std::uint32_t u = 0; u < vertex_count(); ++u)
            if (degree(u) == 0) ++isolated;
        return static_cast<double>(isolated) / vertex_count();
    }

    std::uint32_t max_degree() const {
        std::uint32_t m = 0;
        for (std::uint32_t u = 0; u < vertex_count(); ++u) m = std::max(m, degree(u));
        return m;
    }

    /// Sanity check used by tests: sorted, symmetric, loop-free, no duplicates.
    bool well_formed() const {
        for (std::uint32_t u = 0; u < vertex_count(); ++u) {
            auto nb = neighbors(u);
            if (!std::is_sorted(nb.begin(), nb.end())) return false;
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
            for (std::uint32_t v : nb) {
                if (v == u || v >= vertex_count()) return false;
                if (!has_edge(v, u)) return false;
            }
        }
        return true;
    }

private:
    std::uint32_t n_ = 0;
    std::uint32_t v0_ = 0;
    std::vector<std::uint32_t> offsets_ = {0};
    std::vector<std::uint32_t> adj_;

    friend ReproGraph evolve(const ReproGraph&, const Params&, const StreamKey&, const Caps&,
                             unsigned);
};

/// Index convention: vertex i of G_n continues as i and spawns child i + V_n.
inline std::pair<std::uint32_t, std::uint32_t> index_map(std::uint32_t i, std::uint32_t v_n) {
    if (i >= v_n) throw std::out_of_range("index_map: vertex index out of range");
    return {i, i + v_n};
}

/// Inverse of the convention: the G_n ancestor of vertex j in G_{n+1}.
inline std::uint32_t ancestor_index(std::uint32_t j, std::uint32_t v_n) {
    return j % v_n;
}

/// One growth step G_n -> G_{n+1}.
inline ReproGraph evolve(const ReproGraph& g, const Params& params, const StreamKey& key,
                         const Caps& caps = {}, unsigned workers = 1) {
    params.validate();
    const std::uint32_t V = g.vertex_count();
    const std::uint64_t V2 = 2ull * V;
    if (V2 > caps.max_vertices)
        throw resource_limit_error("evolve: vertex cap exceeded (" + std::to_string(V2) + " > " +
                                   std::to_string(caps.max_vertices) + ")");
    const double projected = g.edge_count() * params.edge_growth_rate() + V * params.beta;
    if (projected > static_cast<double>(caps.max_edges) * 1.05 + 1024.0)
        throw resource_limit_error("evolve: projected edge count " +
                                   std::to_string(static_cast<std::uint64_t>(projected)) +
                                   " exceeds cap " + std::to_string(caps.max_edges));

    const std::uint64_t gen = g.generation();
    const StreamKey kb = key.child({gen, rule_tag::parent_child});
    const StreamKey kc = key.child({gen, rule_tag::child_continuation});
    const StreamKey kd = key.child({gen, rule_tag::child_child});

    auto trial = [](const StreamKey& k, double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return k.unit(0) < p;
    };

    using Edge = std::pair<std::uint32_t, std::uint32_t>;
    const unsigned nchunks = (workers > 1 && V >= 2048) ? workers : 1;
    std::vector<std::vector<Edge>> chunk_edges(nchunks);

    parallel_for_index(nchunks, nchunks, [&](std::size_t chunk) {
        const std::uint32_t lo = static_cast<std::uint32_t>(chunk * V / nchunks);
        const std::uint32_t hi = static_cast<std::uint32_t>((chunk + 1) * V / nchunks);
        auto& out = chunk_edges[chunk];
        for (std::uint32_t u = lo; u < hi; ++u) {
            const StreamKey kcu = kc.child(u);
            const StreamKey kdu = kd.child(u);
            for (std::uint32_t v : g.neighbors(u)) {
                if (v > u) out.emplace_back(u, v);                       // (a) retained
                if (trial(kcu.child(v), params.gamma))                    // (c) u0–v1
                    out.emplace_back(v, u + V);
                if (v > u && trial(kdu.child(v), params.alpha))           // (d) u0–v0
                    out.emplace_back(u + V, v + V);
            }
            if (trial(kb.child(u), params.beta))                          // (b) u0–u1
                out.emplace_back(u, u + V);
        }
    });

    std::uint64_t total_edges = 0;
    for (const auto& ce : chunk_edges) total_edges += ce.size();
    if (total_edges > caps.max_edges)
        throw resource_limit_error("evolve: edge cap exceeded (" + std::to_string(total_edges) +
                                   " > " + std::to_string(caps.max_edges) + ")");

    // Assemble CSR directly; trial outcomes above already guarantee a simple graph.
    ReproGraph out;
    out.n_ = g.generation() + 1;
    out.v0_ = g.v0();
    out.offsets_.assign(V2 + 1, 0);
    for (const auto& ce : chunk_edges)
        for (auto [a, b] : ce) {
            ++out.offsets_[a + 1];
            ++out.offsets_[b + 1];
        }
    for (std::size_t i = 1; i < out.offsets_.size(); ++i) out.offsets_[i] += out.offsets_[i - 1];
    out.adj_.resize(out.offsets_.back());
    std::vector<std::uint32_t> cursor(out.offsets_.begin(), out.offsets_.end() - 1);
    for (const auto& ce : chunk_edges)
        for (auto [a, b] : ce) {
            out.adj_[cursor[a]++] = b;
            out.adj_[cursor[b]++] = a;
        }
    for (std::uint64_t u = 0; u < V2; ++u)
        std::sort(out.adj_.begin() + out.offsets_[u], out.adj_.begin() + out.offsets_[u + 1]);
    return out;
}

/// Per-generation summary scalars.
struct GenerationStats {
    std::uint32_t n = 0;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::map<std::uint32_t, std::uint64_t> degree_histogram;
    double isolated_fraction = 0.0;
    double normalized_edges_sparse = 0.0;    // E_n / 2^n
    double normalized_edges_critical = 0.0;  // E_n / (2^n n), 0 for n = 0
    std::optional<double> martingale_w;      // set when beta > 0
    std::uint32_t max_degree = 0;
};

inline GenerationStats make_stats(const ReproGraph& g, const Params& params) {
    GenerationStats s;
    s.n = g.generation();
    s.vertices = g.vertex_count();
    s.edges = g.edge_count();
    s.degree_histogram = g.degree_histogram();
    auto it = s.degree_histogram.find(0);
    s.isolated_fraction =
        it == s.degree_histogram.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(s.vertices);
    const double pow2 = std::pow(2.0, s.n);
    s.normalized_edges_sparse = static_cast<double>(s.edges) / pow2;
    s.normalized_edges_critical =
        s.n == 0 ? 0.0 : static_cast<double>(s.edges) / (pow2 * s.n);
    if (params.beta > 0.0)
        s.martingale_w = martingale_w(static_cast<double>(s.vertices),
                                      static_cast<double>(s.edges), s.n, params);
    if (!s.degree_histogram.empty()) s.max_degree = s.degree_histogram.rbegin()->first;
    return s;
}

/// Convenience overload matching the stats record.
inline double martingale_w(const GenerationStats& s, const Params& params) {
    return martingale_w(static_cast<double>(s.vertices), static_cast<double>(s.edges), s.n,
                        params);
}

struct GrowOptions {
    bool keep_final = false;
    Caps caps{};
    unsigned workers = 1;
    /// Called on every generation (including G_0) after stats collection.
    std::function<void(const ReproGraph&)> observer;
};

struct GrowResult {
    std::vector<GenerationStats> stats;
    std::optional<ReproGraph> final_graph;
};

/// Iterates evolve `steps` times; stats entry m describes G_m.
inline GrowResult grow(const ReproGraph& g0, const Params& params, std::uint32_t steps,
                       const StreamKey& key, GrowOptions opts = {}) {
    GrowResult res;
    res.stats.reserve(steps + 1);
    ReproGraph g = g0;
    res.stats.push_back(make_stats(g, params));
    if (opts.observer) opts.observer(g);
    for (std::uint32_t m = 0; m < steps; ++m) {
        g = evolve(g, params, key, opts.caps, opts.workers);
        res.stats.push_back(make_stats(g, params));
        if (opts.observer) opts.observer(g);
    }
    if (opts.keep_final) res.final_graph = std::move(g);
    return res;
}

/// Densification fit over a grown stats sequence (log E vs log V slope on
/// the last half of the generations).
inline double densification_fit(const std::vector<GenerationStats>& stats) {
    std::vector<double> vs, es;
    vs.reserve(stats.size());
    es.reserve(stats.size());
    for (const auto& s : stats) {
        vs.push_back(static_cast<double>(s.vertices));
        es.push_back(static_cast<double>(s.edges));
    }
    return densification_fit(std::span<const double>(vs), std::span<const double>(es));
}

} // namespace reprograph
