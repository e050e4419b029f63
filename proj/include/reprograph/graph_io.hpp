#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "reprograph/graph.hpp"

namespace reprograph {

/// Builds a starting graph from a preset name: "k1" (single vertex),
/// "k<n>" complete, "p<n>" path, "c<n>" cycle.
inline ReproGraph make_preset(const std::string& name) {
    if (name.size() < 2 || !std::isdigit(static_cast<unsigned char>(name[1])))
        throw std::invalid_argument("unknown graph preset: " + name);
    const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
    const std::uint32_t n = static_cast<std::uint32_t>(std::stoul(name.substr(1)));
    if (n == 0) throw std::invalid_argument("graph preset needs at least one vertex: " + name);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    switch (kind) {
        case 'k':
            for (std::uint32_t u = 0; u < n; ++u)
                for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            break;
        case 'p':
            for (std::uint32_t u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
            break;
        case 'c':
            if (n < 3) throw std::invalid_argument("cycle preset needs >= 3 vertices: " + name);
            for (std::uint32_t u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
            edges.emplace_back(0, n - 1);
            break;
        default:
            throw std::invalid_argument("unknown graph preset: " + name);
    }
    return ReproGraph::from_edges(n, edges);
}

/// Edge-list format: optional "# vertices N" header, then one "u v" line per
/// edge with u < v, ASCII decimal, newline-terminated.
inline void export_edgelist(const ReproGraph& g, std::ostream& os) {
    os << "# vertices " << g.vertex_count() << "\n";
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u)
        for (std::uint32_t v : g.neighbors(u))
            if (v > u) os << u << " " << v << "\n";
}

inline void export_edgelist(const ReproGraph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    export_edgelist(g, os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

inline ReproGraph import_edgelist(std::istream& is) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint64_t declared_vertices = 0;
    std::uint64_t max_index = 0;
    bool any_vertex = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string word;
            std::uint64_t n = 0;
            if (hs >> word >> n && word == "vertices") declared_vertices = n;
            continue;
        }
        std::istringstream ls(line);
        std::uint64_t u = 0, v = 0;
        if (!(ls >> u >> v)) throw std::runtime_error("edge list: malformed line: " + line);
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        max_index = std::max({max_index, u, v});
        any_vertex = true;
    }
    std::uint64_t vertex_count = std::max(declared_vertices, any_vertex ? max_index + 1 : 0);
    return ReproGraph::from_edges(static_cast<std::uint32_t>(vertex_count), edges);
}

inline ReproGraph import_edgelist(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open edge list: " + path);
    return import_edgelist(is);
}

/// GraphViz DOT: one node statement per vertex, one "u -- v" line per edge.
inline void export_dot(const ReproGraph& g, std::ostream& os) {
    os << "graph G {\n";
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) os << "  " << u << ";\n";
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u)
        for (std::uint32_t v : g.neighbors(u))
            if (v > u) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
}

inline void export_dot(const ReproGraph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    export_dot(g, os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

/// Resolves a --g0 argument: preset name or path to an edge-list file.
inline ReproGraph load_g0(const std::string& name_or_path) {
    const bool preset_like =
        name_or_path.size() >= 2 && std::isalpha(static_cast<unsigned char>(name_or_path[0])) &&
        std::all_of(name_or_path.begin() + 1, name_or_path.end(),
                    [](unsigned char c) { return std::isdigit(c); });
    if (preset_like) return make_preset(name_or_path);
    return import_edgelist(name_or_path);
}

} // namespace reprograph
