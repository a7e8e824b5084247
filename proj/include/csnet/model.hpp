#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csnet {

// Connection function r(u); every variant maps [0,inf) into [0,1], is
// nondecreasing, and has r(u)/u nonincreasing.
enum class Kernel {
    Min,          // r(u) = min(u, 1)
    Rational,     // r(u) = u / (1 + u)
    Exponential,  // r(u) = 1 - exp(-u)
};

double kernel_eval(Kernel kernel, double u);
Kernel kernel_from_name(const std::string& name);  // "min" | "rational" | "exp"
std::string kernel_name(Kernel kernel);

// Vertex count, tail exponent, and every derived scale of the weight law
// rho(h) = C h^{-tau} on [1, h_c].
struct ModelParams {
    std::uint64_t n = 0;
    double tau = 0.0;
    double mean_h = 0.0;  // (tau-1)/(tau-2) * (1-N^{2-tau})/(1-N^{1-tau})
    double h_s = 0.0;     // structural cutoff sqrt(N<h>)
    double h_c = 0.0;     // natural cutoff (N<h>)^{1/(tau-1)}
    double a = 0.0;       // 1/h_s
    double b = 0.0;       // h_c/h_s
    double norm_c = 0.0;  // normalizes rho on [1, h_c]
    double log_nh = 0.0;  // ln(N<h>)
};

ModelParams derive_params(std::uint64_t n, double tau);

// r(h1*h2 / (N<h>)); symmetric, requires both weights in [1, h_c].
double connection_prob(const ModelParams& params, Kernel kernel, double h1, double h2);

// i.i.d. inverse-CDF draws from the truncated Pareto; draw i depends only on
// (seed, i). With truncated=false the upper cutoff is removed.
std::vector<double> sample_hidden(const ModelParams& params, std::uint64_t seed,
                                  std::size_t count, bool truncated = true);

// CDF of the truncated weight law (test oracle and KS reference).
double hidden_cdf(const ModelParams& params, double h);

struct RegimeBoundaries {
    double h_flat_end = 0.0;  // h_s^2 / h_c, end of the flat range
    double h_struct = 0.0;    // h_s
    double alpha = 0.0;       // 2(3-tau), tail exponent of the clustering spectrum
};

RegimeBoundaries regime_boundaries(const ModelParams& params);

}  // namespace csnet
