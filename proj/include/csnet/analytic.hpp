#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "csnet/model.hpp"

namespace csnet {

// The clustering curve c(h) splits at h_s^2/h_c and h_s into a flat range,
// a logarithmic-decay range, and a power-law range.
enum class Regime { I, II, III };

Regime classify_regime(const ModelParams& params, double h);
std::string regime_name(Regime r);

// Thrown when adaptive quadrature cannot reach the requested tolerance; the
// best estimate and its achieved relative error ride along.
struct AccuracyError : std::runtime_error {
    AccuracyError(const std::string& what, double estimate_, double achieved_)
        : std::runtime_error(what), estimate(estimate_), achieved_rel_error(achieved_) {}
    double estimate;
    double achieved_rel_error;
};

// c(h) as the double-integral ratio in (x,y) in [a,b]^2 coordinates,
// by nested adaptive quadrature in log coordinates with the domain pre-cut
// along the kink lines of the min kernel.
double c_quadrature(const ModelParams& params, Kernel kernel, double h, double tol);

// Exact piecewise closed form of c(h) for the min kernel: the flat-range
// three-term numerator, the middle-range terms I1..I6, the upper-range terms
// I1..I7, and the matching piecewise denominator.
double c_exact_min(const ModelParams& params, double h);

struct CAsym {
    double value = 0.0;
    Regime regime = Regime::I;
};

// Leading-order form of c(h) with exact prefactors per range.
CAsym c_asymptotic(const ModelParams& params, double h);

enum class SigmaRef { AtHc, AtZero };

// sigma_N(t) = ln(c((N<h>)^t) / c(h_ref)) / ln(N<h>) for t in [0, 1/(tau-1)].
// AtZero uses the flat-range constant as c(h_ref).
double sigma_n(const ModelParams& params, Kernel kernel, double t, SigmaRef ref,
               double tol = 1e-8);

// Large-N limit of sigma_N: 0 up to t = 1/2, then (3-tau)(1-2t).
double sigma_limit(double tau, double t);

struct SigmaZeroExcess {
    double gamma = 0.0;        // (3-tau)^2/(tau-1)
    double excess_beta = 0.0;  // (tau-2) * gamma
    double y = 0.0;            // ln(N<h>)
    double sigma0 = 0.0;       // gamma + ln(excess_beta * y)/y
};

SigmaZeroExcess sigma_zero_excess(std::uint64_t n, double tau);

// Exact constants behind the endpoint-slope formulas plus the flat-range
// boundary constant P.
struct SlopeConstants {
    double A = 0, C = 0, D = 0, E = 0;  // sigma'_N(1/(tau-1))
    double G = 0, H = 0, I = 0, J = 0;  // sigma'_N(1/2)
    double P = 0;
};

SlopeConstants slope_constants(const ModelParams& params);

// sigma'_N(1/(tau-1)) = -2[(A + C(3-tau)/(tau-2))/(A + C(4-tau)/(tau-2)) - D/(E+D)]
double slope_at_hc(const ModelParams& params);

// sigma'_N(1/2) = -2[(G+H)/((1+((tau-1)/(3-tau))^2)G + 2H) - I/(I+J)]
double slope_at_half(const ModelParams& params);

enum class SlopePoint { AtHc, AtHalf };

// N -> infinity limits: -2(3-tau) and -1 + 2(tau-2)/(3-(tau-2)^2).
double slope_limit(double tau, SlopePoint point);

struct SlopeEstimate {
    double value = 0.0;
    bool reliable = true;  // false when dt is too small for the working precision
};

// Finite difference of sigma_N: central in the interior, second-order
// one-sided at the ends of [0, 1/(tau-1)].
SlopeEstimate slope_numeric(const ModelParams& params, Kernel kernel, double t, double dt,
                            double tol = 1e-9);

// P(k) = integral of g(k|h) rho(h) dh with Poisson mixing g(k|h) = e^-h h^k / k!.
double degree_prob(const ModelParams& params, std::uint64_t k);

// cbar(k) = (1/P(k)) * integral of rho(h) c(h) g(k|h) dh for k >= 2, else 0.
double cbar_from_ch(const ModelParams& params, Kernel kernel, std::uint64_t k,
                    double tol = 1e-8);

enum class TriangleEdge { VpVpp, VVp, VVpp };

// The most likely triangle at a weight-h vertex: the partner weights that
// trade off edge likelihood against vertex abundance, and which of the three
// edges sit at probability one.
struct DominantTriangle {
    double h_prime = 0.0;
    double h_dprime = 0.0;
    Regime regime = Regime::I;
    std::vector<TriangleEdge> saturated_edges;
};

DominantTriangle dominant_triangle(const ModelParams& params, double h);

}  // namespace csnet
