#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csnet/graph.hpp"
#include "csnet/model.hpp"

namespace csnet {

struct GenReport {
    std::uint64_t seed = 0;
    std::string model;
    std::uint64_t edges_created = 0;
    std::uint64_t self_loops_erased = 0;
    std::uint64_t multi_edges_erased = 0;
};

struct HiddenVariableGraph {
    Graph graph;
    GenReport report;
    std::vector<double> hidden;  // weight of each vertex
};

// Hidden-variable graph: every unordered pair {i,j} is an edge independently
// with probability connection_prob(h_i, h_j). Expected work O(N + m) via
// geometric skips over the weight-sorted vertex order; deterministic given
// seed and independent of thread scheduling.
HiddenVariableGraph generate_hidden_variable(const ModelParams& params, Kernel kernel,
                                             std::uint64_t seed,
                                             std::uint64_t memory_budget_bytes = 8ull << 30);

// Theta(N^2) reference generator with per-pair randomness keyed by
// (seed, i, j); kept for cross-validating the skip sampler at small N.
HiddenVariableGraph generate_hidden_variable_naive(const ModelParams& params, Kernel kernel,
                                                   std::uint64_t seed);

// N * integral of rho(h') p(h, h') dh' by adaptive quadrature.
double expected_degree(const ModelParams& params, Kernel kernel, double h);

// N i.i.d. draws from P(X = x) proportional to x^{-tau} on {1, ..., floor(h_c)};
// if the sum comes out odd one uniformly chosen entry is bumped by 1.
std::vector<std::uint32_t> sample_power_law_degrees(const ModelParams& params,
                                                    std::uint64_t seed);

struct EcmGraph {
    Graph graph;
    GenReport report;
};

// Erased configuration model: uniform stub matching, then self-loops dropped
// and parallel edges collapsed to one copy (removals counted in the report).
EcmGraph generate_ecm(std::span<const std::uint32_t> degrees, std::uint64_t seed);

// ECM on the degree sequence of an existing graph, so both null models share
// one degree distribution (the sum is even by construction).
EcmGraph generate_ecm_matched(const Graph& reference, std::uint64_t seed);

}  // namespace csnet
