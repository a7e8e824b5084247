#include "csnet/model.hpp"

#include <cmath>
#include <stdexcept>

#include "csnet/rng.hpp"

namespace csnet {

double kernel_eval(Kernel kernel, double u) {
    if (u < 0.0 || std::isnan(u)) throw std::domain_error("kernel_eval: u must be >= 0");
    switch (kernel) {
        case Kernel::Min:
            return u < 1.0 ? u : 1.0;
        case Kernel::Rational:
            return u / (1.0 + u);
        case Kernel::Exponential:
            return -std::expm1(-u);
    }
    throw std::logic_error("kernel_eval: unknown kernel");
}

Kernel kernel_from_name(const std::string& name) {
    if (name == "min") return Kernel::Min;
    if (name == "rational") return Kernel::Rational;
    if (name == "exp" || name == "exponential") return Kernel::Exponential;
    throw std::invalid_argument("unknown kernel '" + name + "' (expected min|rational|exp)");
}

std::string kernel_name(Kernel kernel) {
    switch (kernel) {
        case Kernel::Min: return "min";
        case Kernel::Rational: return "rational";
        case Kernel::Exponential: return "exp";
    }
    return "?";
}

ModelParams derive_params(std::uint64_t n, double tau) {
    if (n < 2) throw std::domain_error("derive_params: N must be >= 2");
    if (!(tau > 2.0 && tau < 3.0))
        throw std::domain_error("derive_params: tau must lie in (2,3)");
    ModelParams p;
    p.n = n;
    p.tau = tau;
    const double nd = static_cast<double>(n);
    p.mean_h = (tau - 1.0) / (tau - 2.0) * (-std::expm1((2.0 - tau) * std::log(nd))) /
               (-std::expm1((1.0 - tau) * std::log(nd)));
    p.log_nh = std::log(nd) + std::log(p.mean_h);
    p.h_s = std::exp(0.5 * p.log_nh);
    p.h_c = std::exp(p.log_nh / (tau - 1.0));
    p.a = 1.0 / p.h_s;
    p.b = p.h_c / p.h_s;
    p.norm_c = (tau - 1.0) / (-std::expm1((1.0 - tau) * std::log(p.h_c)));
    return p;
}

double connection_prob(const ModelParams& params, Kernel kernel, double h1, double h2) {
    const double hi = params.h_c * (1.0 + 1e-12);
    if (!(h1 >= 1.0 && h1 <= hi) || !(h2 >= 1.0 && h2 <= hi))
        throw std::domain_error("connection_prob: hidden variables must lie in [1, h_c]");
    return kernel_eval(kernel, h1 * h2 * std::exp(-params.log_nh));
}

std::vector<double> sample_hidden(const ModelParams& params, std::uint64_t seed,
                                  std::size_t count, bool truncated) {
    if (count < 1) throw std::domain_error("sample_hidden: count must be >= 1");
    const double tau = params.tau;
    // P(H > h) on [1, h_c] is (h^{1-tau} - hc^{1-tau}) / (1 - hc^{1-tau})
    const double tail_hc = truncated ? std::exp((1.0 - tau) * std::log(params.h_c)) : 0.0;
    const double scale = 1.0 - tail_hc;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = u64_to_unit_open(keyed_u64(seed, rng_stream::hidden_values, i));
        out[i] = std::exp(std::log1p(-u * scale) / (1.0 - tau));
    }
    return out;
}

double hidden_cdf(const ModelParams& params, double h) {
    if (h <= 1.0) return 0.0;
    if (h >= params.h_c) return 1.0;
    const double tau = params.tau;
    return std::expm1((1.0 - tau) * std::log(h)) /
           std::expm1((1.0 - tau) * std::log(params.h_c));
}

RegimeBoundaries regime_boundaries(const ModelParams& params) {
    RegimeBoundaries r;
    r.h_flat_end = params.h_s * params.h_s / params.h_c;
    r.h_struct = params.h_s;
    r.alpha = 2.0 * (3.0 - params.tau);
    return r;
}

}  // namespace csnet
