#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lzend/errors.hpp"

namespace lzend {

// Simple undirected graph; vertices 1..n, edges indexed 1..m in input order.
struct Graph {
    int64_t n = 0;
    std::vector<std::pair<int64_t, int64_t>> edges;  // u < v, no duplicates

    int64_t m() const { return static_cast<int64_t>(edges.size()); }
};

struct VertexCover {
    std::vector<int64_t> vertices;  // sorted, distinct

    int64_t size() const { return static_cast<int64_t>(vertices.size()); }
    bool contains(int64_t v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }
};

// Reads "n m" then m lines "u v" (1-based).
inline Graph parse_graph(std::istream& in) {
    Graph g;
    int64_t m = 0;
    if (!(in >> g.n >> m)) throw InputError("graph header must be two integers: n m");
    if (g.n < 0 || m < 0) throw InputError("graph sizes must be non-negative");
    std::set<std::pair<int64_t, int64_t>> seen;
    for (int64_t k = 0; k < m; ++k) {
        int64_t u = 0, v = 0;
        if (!(in >> u >> v)) throw InputError("expected " + std::to_string(m) + " edge lines");
        if (u < 1 || u > g.n || v < 1 || v > g.n)
            throw InputError("edge endpoint out of range in edge " + std::to_string(k + 1));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        g.edges.emplace_back(u, v);
    }
    return g;
}

inline Graph parse_graph(const std::string& body) {
    std::istringstream in(body);
    return parse_graph(in);
}

// Incident edge indices per vertex, ascending; index 0 unused.
inline std::vector<std::vector<int64_t>> incident_edges(const Graph& g) {
    std::vector<std::vector<int64_t>> inc(static_cast<size_t>(g.n) + 1);
    for (int64_t j = 1; j <= g.m(); ++j) {
        const auto& [u, v] = g.edges[static_cast<size_t>(j - 1)];
        inc[static_cast<size_t>(u)].push_back(j);
        inc[static_cast<size_t>(v)].push_back(j);
    }
    return inc;
}

inline bool is_vertex_cover(const Graph& g, const VertexCover& cover) {
    for (const auto& [u, v] : g.edges)
        if (!cover.contains(u) && !cover.contains(v)) return false;
    return true;
}

// Exhaustive minimum vertex cover; first minimum in ascending bitmask order,
// so the result is deterministic.
inline VertexCover minimum_vertex_cover(const Graph& g) {
    if (g.n > 20)
        throw ResourceError("exhaustive vertex cover limited to 20 vertices, got " +
                            std::to_string(g.n));
    VertexCover best;
    int64_t best_size = g.n + 1;
    for (uint32_t mask = 0; mask < (1u << g.n); ++mask) {
        const int64_t size = __builtin_popcount(mask);
        if (size >= best_size) continue;
        bool covers = true;
        for (const auto& [u, v] : g.edges) {
            if (!((mask >> (u - 1)) & 1) && !((mask >> (v - 1)) & 1)) {
                covers = false;
                break;
            }
        }
        if (!covers) continue;
        best.vertices.clear();
        for (int64_t v = 1; v <= g.n; ++v)
            if ((mask >> (v - 1)) & 1) best.vertices.push_back(v);
        best_size = size;
    }
    return best;
}

// Vertex cover number by subset enumeration.
inline int64_t brute_force_vertex_cover(const Graph& g) {
    return minimum_vertex_cover(g).size();
}

// The reduction needs a connected graph with minimum degree 2.
inline void check_reduction_preconditions(const Graph& g) {
    if (g.n < 1) throw ContractError("reduction-precondition", "graph has no vertices");
    const auto inc = incident_edges(g);
    for (int64_t v = 1; v <= g.n; ++v)
        if (static_cast<int64_t>(inc[static_cast<size_t>(v)].size()) < 2)
            throw ContractError("reduction-precondition",
                                "vertex " + std::to_string(v) + " has degree " +
                                    std::to_string(inc[static_cast<size_t>(v)].size()) +
                                    ", need at least 2");
    std::vector<char> seen(static_cast<size_t>(g.n) + 1, 0);
    std::vector<int64_t> stack{1};
    seen[1] = 1;
    int64_t reached = 1;
    while (!stack.empty()) {
        const int64_t u = stack.back();
        stack.pop_back();
        for (int64_t j : inc[static_cast<size_t>(u)]) {
            const auto& [a, b] = g.edges[static_cast<size_t>(j - 1)];
            const int64_t w = a == u ? b : a;
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != g.n)
        for (int64_t v = 1; v <= g.n; ++v)
            if (!seen[static_cast<size_t>(v)])
                throw ContractError("reduction-precondition",
                                    "graph is disconnected; vertex " + std::to_string(v) +
                                        " is unreachable from vertex 1");
}

} // namespace lzend
