#pragma once

// Shared test helpers: small-graph builders and independent oracles. These
// stay deliberately naive so they can referee the production paths.

#include <cstdint>
#include <vector>

#include "csnet/graph.hpp"
#include "csnet/rng.hpp"

namespace testutil {

inline csnet::Graph from_pairs(std::uint32_t n,
                               std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> es) {
    std::vector<csnet::Graph::edge> edges;
    for (auto [u, v] : es) edges.emplace_back(u, v);
    return csnet::Graph::from_edges(n, edges);
}

// Erdos-Renyi G(n, p) with counter-based randomness.
inline csnet::Graph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
    std::vector<csnet::Graph::edge> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (csnet::u64_to_unit(csnet::keyed_u64(seed, i, j)) < p) edges.emplace_back(i, j);
    return csnet::Graph::from_edges(n, edges);
}

// O(n^3) triple enumeration over an adjacency matrix.
inline std::uint64_t brute_force_triangles(const csnet::Graph& g) {
    const std::uint32_t n = g.num_vertices();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::uint32_t v = 0; v < n; ++v)
        for (auto u : g.neighbors(v)) adj[v][u] = true;
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            if (adj[a][b])
                for (std::uint32_t c = b + 1; c < n; ++c)
                    if (adj[a][c] && adj[b][c]) ++count;
    return count;
}

}  // namespace testutil
