#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csnet/spectrum.hpp"

namespace csnet {

struct FitResult {
    double exponent_hat = 0.0;  // > 1
    std::uint32_t xmin = 1;
    double ks_distance = 1.0;
    std::size_t n_tail = 0;
    std::optional<double> gof_pvalue;
};

// Hurwitz zeta sum_{j>=0} (q+j)^{-s} for s > 1, q >= 1 (Euler-Maclaurin tail).
double hurwitz_zeta(double s, double q);

// Discrete power-law tail fit: for each candidate xmin (observed values up to
// the 90th percentile, tail size >= 10) maximize the zeta-normalized
// likelihood and keep the xmin with the smallest KS distance.
FitResult fit_degree_tail(std::span<const std::uint32_t> samples);

// Semi-parametric bootstrap: body resampled empirically, tail drawn from the
// fitted law, each replicate refit from scratch; returns the fraction of
// replicates whose KS distance reaches the observed one.
double gof_pvalue(std::span<const std::uint32_t> samples, const FitResult& fit,
                  std::size_t replicates, std::uint64_t seed);

// alpha = -(least-squares slope of ln cbar vs ln k) over rows with k >= k_min.
double fit_spectrum_exponent(const SpectrumTable& table, double k_min);

// i.i.d. draws from P(X = x) = x^{-alpha} / zeta(alpha, xmin) on {xmin, xmin+1, ...}.
std::vector<std::uint32_t> sample_discrete_power_law(double alpha, std::uint32_t xmin,
                                                     std::size_t count, std::uint64_t seed,
                                                     std::uint64_t stream = 0);

}  // namespace csnet
