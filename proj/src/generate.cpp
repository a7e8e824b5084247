#include "csnet/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "csnet/parallel.hpp"
#include "csnet/quadrature.hpp"
#include "csnet/rng.hpp"

namespace csnet {

namespace {

std::vector<std::uint32_t> order_by_weight_desc(const std::vector<double>& h) {
    std::vector<std::uint32_t> order(h.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (h[x] != h[y]) return h[x] > h[y];
        return x < y;
    });
    return order;
}

}  // namespace

HiddenVariableGraph generate_hidden_variable(const ModelParams& params, Kernel kernel,
                                             std::uint64_t seed,
                                             std::uint64_t memory_budget_bytes) {
    const std::uint64_t n = params.n;
    // Rough footprint: weights + order + CSR + edge buffer at the Chung-Lu
    // mean-degree scale.
    const double est_edges = 0.75 * static_cast<double>(n) * params.mean_h;
    const double est_bytes = 32.0 * static_cast<double>(n) + 24.0 * est_edges;
    if (est_bytes > static_cast<double>(memory_budget_bytes))
        throw std::runtime_error("generate_hidden_variable: memory budget exceeded");

    HiddenVariableGraph out;
    out.hidden = sample_hidden(params, seed, n);
    out.report.seed = seed;
    out.report.model = "hidden";

    const auto order = order_by_weight_desc(out.hidden);
    std::vector<double> hs(n);
    for (std::uint64_t i = 0; i < n; ++i) hs[i] = out.hidden[order[i]];
    const double inv_nh = std::exp(-params.log_nh);
    auto prob = [&](std::uint64_t i, std::uint64_t j) {
        return kernel_eval(kernel, hs[i] * hs[j] * inv_nh);
    };

    const unsigned threads = default_threads();
    std::vector<std::vector<Graph::edge>> buffers(threads);
    std::atomic<std::size_t> next_block{0};
    const std::uint64_t block = std::max<std::uint64_t>(n / (threads * 16) + 1, 64);
    parallel_for(threads, [&](std::size_t tid) {
        auto& edges = buffers[tid];
        for (;;) {
            const std::uint64_t lo = next_block.fetch_add(1) * block;
            if (lo >= n) return;
            const std::uint64_t hi = std::min(n, lo + block);
            for (std::uint64_t i = lo; i < hi; ++i) {
                CounterRng rng(seed, rng_stream::edge_rows + i);
                std::uint64_t j = i + 1;
                if (j >= n) continue;
                double p = prob(i, j);
                while (j < n && p > 0.0) {
                    if (p >= 1.0) {
                        edges.emplace_back(order[i], order[j]);
                        ++j;
                        if (j < n) p = prob(i, j);
                        continue;
                    }
                    // Geometric skip under the bound p, then thin to the
                    // exact probability at the landing index (valid because
                    // the weight-sorted probabilities are nonincreasing).
                    const double u = rng.next_unit_open();
                    const double skip = std::floor(std::log(u) / std::log1p(-p));
                    if (skip >= static_cast<double>(n - j)) break;
                    j += static_cast<std::uint64_t>(skip);
                    const double q = prob(i, j);
                    if (rng.next_unit() * p < q) edges.emplace_back(order[i], order[j]);
                    p = q;
                    ++j;
                }
            }
        }
    }, threads);

    std::vector<Graph::edge> edges;
    std::size_t total = 0;
    for (const auto& b : buffers) total += b.size();
    edges.reserve(total);
    for (auto& b : buffers) {
        edges.insert(edges.end(), b.begin(), b.end());
        b.clear();
        b.shrink_to_fit();
    }
    out.report.edges_created = edges.size();
    out.graph = Graph::from_edges(static_cast<Graph::vertex>(n), edges);
    return out;
}

HiddenVariableGraph generate_hidden_variable_naive(const ModelParams& params, Kernel kernel,
                                                   std::uint64_t seed) {
    const std::uint64_t n = params.n;
    HiddenVariableGraph out;
    out.hidden = sample_hidden(params, seed, n);
    out.report.seed = seed;
    out.report.model = "hidden";
    const double inv_nh = std::exp(-params.log_nh);
    std::vector<Graph::edge> edges;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = i + 1; j < n; ++j) {
            const double p = kernel_eval(kernel, out.hidden[i] * out.hidden[j] * inv_nh);
            const double u = u64_to_unit(keyed_u64(seed, rng_stream::edge_rows + i, j));
            if (u < p)
                edges.emplace_back(static_cast<Graph::vertex>(i), static_cast<Graph::vertex>(j));
        }
    }
    out.report.edges_created = edges.size();
    out.graph = Graph::from_edges(static_cast<Graph::vertex>(n), edges);
    return out;
}

double expected_degree(const ModelParams& params, Kernel kernel, double h) {
    if (!(h >= 1.0 && h <= params.h_c * (1.0 + 1e-12)))
        throw std::domain_error("expected_degree: h outside [1, h_c]");
    const double tau = params.tau;
    const double lhc = std::log(params.h_c);
    // integrate over v = ln h'
    auto f = [&](double v) {
        const double u = std::exp(v + std::log(h) - params.log_nh);
        return params.norm_c * std::exp((1.0 - tau) * v) * kernel_eval(kernel, u);
    };
    std::vector<double> kinks;
    if (kernel == Kernel::Min) kinks.push_back(params.log_nh - std::log(h));  // u = 1
    auto pts = clip_breakpoints(kinks, 0.0, lhc);
    auto q = integrate_breakpoints(f, pts, 1e-10, 0.0);
    return static_cast<double>(params.n) * q.value;
}

std::vector<std::uint32_t> sample_power_law_degrees(const ModelParams& params,
                                                    std::uint64_t seed) {
    const auto cap = static_cast<std::uint32_t>(std::floor(params.h_c));
    std::vector<double> cum(cap);
    double total = 0.0;
    for (std::uint32_t x = 1; x <= cap; ++x) {
        total += std::exp(-params.tau * std::log(static_cast<double>(x)));
        cum[x - 1] = total;
    }
    const std::uint64_t n = params.n;
    std::vector<std::uint32_t> deg(n);
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = u64_to_unit(keyed_u64(seed, rng_stream::degree_draws, i)) * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        deg[i] = static_cast<std::uint32_t>(it - cum.begin()) + 1;
        if (deg[i] > cap) deg[i] = cap;
        sum += deg[i];
    }
    if (sum % 2 == 1) {
        const std::uint64_t pick = CounterRng(seed, rng_stream::degree_draws + 1).next_below(n);
        deg[pick] += 1;
    }
    return deg;
}

EcmGraph generate_ecm(std::span<const std::uint32_t> degrees, std::uint64_t seed) {
    std::uint64_t total = 0;
    for (auto d : degrees) total += d;
    if (total % 2 != 0)
        throw std::invalid_argument("generate_ecm: degree sum must be even");

    std::vector<std::uint32_t> stubs;
    stubs.reserve(total);
    for (std::uint32_t v = 0; v < degrees.size(); ++v)
        stubs.insert(stubs.end(), degrees[v], v);

    CounterRng rng(seed, rng_stream::stub_shuffle);
    for (std::uint64_t i = total; i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.next_below(i)]);

    EcmGraph out;
    out.report.seed = seed;
    out.report.model = "ecm";
    std::vector<Graph::edge> edges;
    edges.reserve(total / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(total);
    for (std::uint64_t t = 0; t < total; t += 2) {
        const std::uint32_t u = stubs[t], v = stubs[t + 1];
        if (u == v) {
            ++out.report.self_loops_erased;
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        if (!seen.insert(key).second) {
            ++out.report.multi_edges_erased;
            continue;
        }
        edges.emplace_back(u, v);
    }
    out.report.edges_created = edges.size();
    out.graph = Graph::from_edges(static_cast<Graph::vertex>(degrees.size()), edges);
    return out;
}

EcmGraph generate_ecm_matched(const Graph& reference, std::uint64_t seed) {
    std::vector<std::uint32_t> degrees(reference.num_vertices());
    for (Graph::vertex v = 0; v < reference.num_vertices(); ++v)
        degrees[v] = reference.degree(v);
    return generate_ecm(degrees, seed);
}

}  // namespace csnet
