#include "csnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "csnet/quadrature.hpp"

namespace csnet {

namespace {

double sq(double x) { return x * x; }

void check_h(const ModelParams& p, double h, const char* who) {
    if (!(h >= 1.0 && h <= p.h_c * (1.0 + 1e-12)))
        throw std::domain_error(std::string(who) + ": h outside [1, h_c]");
}

}  // namespace

Regime classify_regime(const ModelParams& params, double h) {
    check_h(params, h, "classify_regime");
    const double h_flat_end = params.h_s * params.h_s / params.h_c;
    if (h <= h_flat_end) return Regime::I;
    if (h <= params.h_s) return Regime::II;
    return Regime::III;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::I: return "I";
        case Regime::II: return "II";
        case Regime::III: return "III";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// quadrature route
// ---------------------------------------------------------------------------

double c_quadrature(const ModelParams& params, Kernel kernel, double h, double tol) {
    check_h(params, h, "c_quadrature");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("c_quadrature: tol must lie in (0, 1e-3]");
    const double tau = params.tau;
    const double sa = std::log(params.a);
    const double sb = std::log(params.b);
    const double lw = sa + std::log(h);  // ln(ah)
    const bool min_kernel = kernel == Kernel::Min;
    // The inner target sits well below the outer one so that inner noise never
    // masquerades as outer truncation error.
    const double inner_rel = tol / 200.0;
    const double outer_rel = tol / 10.0;

    auto r_of = [&](double log_u) { return kernel_eval(kernel, std::exp(log_u)); };

    // inner integral over t = ln y at fixed s = ln x
    auto inner = [&](double s) {
        auto f = [&](double t) {
            return std::exp((1.0 - tau) * (s + t)) * r_of(lw + s) * r_of(lw + t) * r_of(s + t);
        };
        std::vector<double> kinks;
        if (min_kernel) {
            kinks.push_back(-lw);  // ah*y = 1
            kinks.push_back(-s);   // x*y = 1
        }
        auto q = integrate_breakpoints(f, clip_breakpoints(kinks, sa, sb), inner_rel, 0.0);
        return q.value;
    };

    // Outer breakpoints: the r(ahx) kink, plus the values of s where the
    // hyperbola enters/leaves the square or crosses the horizontal kink.
    std::vector<double> outer_kinks;
    if (min_kernel) {
        outer_kinks = {-lw, lw, -sa, -sb};
    }
    auto num = integrate_breakpoints(inner, clip_breakpoints(outer_kinks, sa, sb),
                                     outer_rel, 0.0);

    auto den_f = [&](double s) { return std::exp((1.0 - tau) * s) * r_of(lw + s); };
    std::vector<double> den_kinks;
    if (min_kernel) den_kinks.push_back(-lw);
    auto den = integrate_breakpoints(den_f, clip_breakpoints(den_kinks, sa, sb),
                                     outer_rel / 2.0, 0.0);

    const double value = num.value / sq(den.value);
    const double achieved = num.abs_error / num.value + 2.0 * den.abs_error / den.value +
                            2.0 * inner_rel;  // inner integrals contribute their own target
    if (!num.converged || !den.converged || !(achieved < tol))
        throw AccuracyError("c_quadrature: tolerance not reached", value, achieved);
    return value;
}

// ---------------------------------------------------------------------------
// exact min-kernel closed form
// ---------------------------------------------------------------------------

double c_exact_min(const ModelParams& params, double h) {
    check_h(params, h, "c_exact_min");
    const double tau = params.tau;
    const double la = std::log(params.a);
    const double lb = std::log(params.b);
    auto apow = [&](double p) { return std::exp(p * la); };
    auto bpow = [&](double p) { return std::exp(p * lb); };

    const double lw = la + std::log(h);  // ln(ah); Range I <=> lw <= -lb

    if (lw <= -lb) {
        // Flat range: r(ahx) = ahx everywhere, the a^2 h^2 factors cancel.
        const double num = 2.0 * lb / ((3.0 - tau) * (tau - 2.0)) +
                           std::expm1((4.0 - 2.0 * tau) * lb) / sq(tau - 2.0) +
                           (1.0 - 2.0 * std::exp((3.0 - tau) * (la + lb)) + apow(6.0 - 2.0 * tau)) /
                               sq(3.0 - tau);
        const double den = (apow(2.0 - tau) - bpow(2.0 - tau)) / (tau - 2.0);
        return num / sq(den);
    }

    auto wpow = [&](double p) { return std::exp(p * lw); };
    const double w = std::exp(lw);
    // denominator: integral of x^{-tau} r(ahx) over [a,b] with the kink at 1/(ah)
    const double den = apow(2.0 - tau) * w / (tau - 2.0) -
                       wpow(tau - 1.0) / ((tau - 1.0) * (tau - 2.0)) -
                       bpow(1.0 - tau) / (tau - 1.0);

    double num;
    if (lw <= 0.0) {
        // Middle range, w = ah in [1/b, 1]
        const double i1 = sq((wpow(tau - 1.0) - bpow(1.0 - tau)) / (tau - 1.0));
        const double i2 =
            2.0 * ((w * w - w / params.b) / (tau - 2.0) -
                   (wpow(2.0 * tau - 2.0) - wpow(tau - 1.0) * bpow(1.0 - tau)) /
                       ((tau - 1.0) * (tau - 2.0)));
        const double i3 =
            2.0 * ((w * w - w / params.b) / (3.0 - tau) -
                   apow(3.0 - tau) * (wpow(tau - 1.0) - w * bpow(2.0 - tau)) /
                       ((3.0 - tau) * (tau - 2.0)));
        const double i4 =
            w * w * (-2.0 * lw / (3.0 - tau) -
                     apow(3.0 - tau) * (wpow(tau - 3.0) - wpow(3.0 - tau)) / sq(3.0 - tau));
        const double i5 = w * w * (-2.0 * lw / (tau - 2.0) +
                                   std::expm1((2.0 * tau - 4.0) * lw) / sq(tau - 2.0));
        const double i6 = w * w *
                          (1.0 - apow(3.0 - tau) * (wpow(3.0 - tau) + wpow(tau - 3.0)) +
                           apow(6.0 - 2.0 * tau)) /
                          sq(3.0 - tau);
        num = i1 + i2 + i3 + i4 + i5 + i6;
    } else {
        // Upper range, w = ah in [1, b]
        const double i1 = 2.0 * lw / (tau - 1.0) +
                          bpow(1.0 - tau) * (wpow(1.0 - tau) - wpow(tau - 1.0)) / sq(tau - 1.0);
        const double i2 = (1.0 + bpow(2.0 - 2.0 * tau) -
                           bpow(1.0 - tau) * (wpow(1.0 - tau) + wpow(tau - 1.0))) /
                          sq(tau - 1.0);
        const double i3 =
            -2.0 * lw / (tau - 2.0) + std::expm1((2.0 * tau - 4.0) * lw) / sq(tau - 2.0);
        const double i4 =
            2.0 * ((1.0 - w / params.b) / (tau - 2.0) +
                   std::expm1((tau - 1.0) * (lw - lb)) / ((tau - 1.0) * (tau - 2.0)));
        const double i5 = 2.0 *
                          (std::expm1((2.0 * tau - 4.0) * lw) -
                           apow(3.0 - tau) * (wpow(tau - 1.0) - wpow(3.0 - tau))) /
                          ((tau - 2.0) * (3.0 - tau));
        const double i6 =
            2.0 * ((1.0 - w / params.b) / (3.0 - tau) +
                   apow(3.0 - tau) * w * (bpow(2.0 - tau) - wpow(2.0 - tau)) /
                       ((3.0 - tau) * (tau - 2.0)));
        const double i7 = sq(wpow(tau - 2.0) - apow(3.0 - tau) * w) / sq(3.0 - tau);
        num = i1 + i2 + i3 + i4 + i5 + i6 + i7;
    }
    return num / sq(den);
}

// ---------------------------------------------------------------------------
// asymptotic ranges
// ---------------------------------------------------------------------------

CAsym c_asymptotic(const ModelParams& params, double h) {
    check_h(params, h, "c_asymptotic");
    const double tau = params.tau;
    const Regime regime = classify_regime(params, h);
    const double hs_pow = std::exp((4.0 - 2.0 * tau) * std::log(params.h_s));
    double value = 0.0;
    switch (regime) {
        case Regime::I:
            value = (tau - 2.0) / (3.0 - tau) * hs_pow *
                    std::log(sq(params.h_c / params.h_s));
            break;
        case Regime::II: {
            // The additive constant comes from continuity at h = h_s with the
            // boundary value c(h_s) = P (tau-2)^2 h_s^{4-2tau}; the leading
            // prefactor is the one the interior evaluation produces, which also
            // makes the form continuous with the flat range up to O(M/ln N).
            const double pconst = 1.0 / sq(tau - 1.0) + 1.0 / sq(3.0 - tau) +
                                  2.0 / (tau - 1.0) + 2.0 / (3.0 - tau);
            const double m = pconst * (tau - 2.0) * (3.0 - tau);
            value = (tau - 2.0) / (3.0 - tau) * hs_pow * (std::log(sq(params.h_s / h)) + m);
            break;
        }
        case Regime::III:
            value = hs_pow / sq(3.0 - tau) * std::exp((6.0 - 2.0 * tau) * std::log(params.h_s / h));
            break;
    }
    return {value, regime};
}

// ---------------------------------------------------------------------------
// sigma_N and slopes
// ---------------------------------------------------------------------------

namespace {

double c_of(const ModelParams& params, Kernel kernel, double h, double tol) {
    return kernel == Kernel::Min ? c_exact_min(params, h)
                                 : c_quadrature(params, kernel, h, tol);
}

double c_reference(const ModelParams& params, Kernel kernel, SigmaRef ref, double tol) {
    if (ref == SigmaRef::AtHc) return c_of(params, kernel, params.h_c, tol);
    // "c(0)": the flat-range value; for smooth kernels (no exactly flat
    // range) the curve at h = 1 stands in for it.
    return c_of(params, kernel, 1.0, tol);
}

void check_t(const ModelParams& params, double t, const char* who) {
    if (!(t >= 0.0 && t <= 1.0 / (params.tau - 1.0) + 1e-12))
        throw std::domain_error(std::string(who) + ": t outside [0, 1/(tau-1)]");
}

}  // namespace

double sigma_n(const ModelParams& params, Kernel kernel, double t, SigmaRef ref, double tol) {
    check_t(params, t, "sigma_n");
    const double h = std::min(std::exp(t * params.log_nh), params.h_c);
    return std::log(c_of(params, kernel, h, tol) / c_reference(params, kernel, ref, tol)) /
           params.log_nh;
}

double sigma_limit(double tau, double t) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::domain_error("sigma_limit: tau outside (2,3)");
    if (!(t >= 0.0 && t <= 1.0 / (tau - 1.0) + 1e-12))
        throw std::domain_error("sigma_limit: t outside [0, 1/(tau-1)]");
    if (t <= 0.5) return 0.0;
    return (3.0 - tau) * (1.0 - 2.0 * t);
}

SigmaZeroExcess sigma_zero_excess(std::uint64_t n, double tau) {
    const ModelParams p = derive_params(n, tau);
    SigmaZeroExcess e;
    e.gamma = sq(3.0 - tau) / (tau - 1.0);
    e.excess_beta = (tau - 2.0) * e.gamma;
    e.y = p.log_nh;
    e.sigma0 = e.gamma + std::log(e.excess_beta * e.y) / e.y;
    return e;
}

SlopeConstants slope_constants(const ModelParams& params) {
    const double tau = params.tau;
    const double la = std::log(params.a);
    const double lb = std::log(params.b);
    auto apow = [&](double p) { return std::exp(p * la); };
    auto bpow = [&](double p) { return std::exp(p * lb); };

    SlopeConstants s;
    s.A = bpow(-2.0) * (-2.0 * lb / ((tau - 1.0) * (tau - 2.0)) +
                        std::expm1(2.0 * (1.0 - tau) * lb) / sq(tau - 1.0) +
                        std::expm1(2.0 * (tau - 2.0) * lb) / sq(tau - 2.0));
    s.C = sq((bpow(tau - 3.0) - apow(3.0 - tau)) / (3.0 - tau));
    s.D = bpow(-1.0) * (bpow(tau - 1.0) - bpow(1.0 - tau)) / (tau - 1.0);
    s.E = (apow(2.0 - tau) - bpow(tau - 2.0)) / (tau - 2.0);

    s.G = sq(-std::expm1((1.0 - tau) * lb) / (tau - 1.0));
    s.H = (1.0 - 1.0 / params.b - bpow(1.0 - tau) * (-std::expm1((2.0 - tau) * lb))) /
              ((tau - 2.0) * (3.0 - tau)) -
          (-std::expm1((1.0 - tau) * lb)) / ((tau - 1.0) * (tau - 2.0));
    s.I = -std::expm1((1.0 - tau) * lb) / (tau - 1.0);
    s.J = std::expm1((tau - 2.0) * (tau - 1.0) / (3.0 - tau) * lb) / (tau - 2.0);

    s.P = 1.0 / sq(tau - 1.0) + 1.0 / sq(3.0 - tau) + 2.0 / (tau - 1.0) + 2.0 / (3.0 - tau);
    return s;
}

double slope_at_hc(const ModelParams& params) {
    const double tau = params.tau;
    const SlopeConstants s = slope_constants(params);
    const double ratio = (s.A + s.C * (3.0 - tau) / (tau - 2.0)) /
                         (s.A + s.C * (4.0 - tau) / (tau - 2.0));
    return -2.0 * (ratio - s.D / (s.E + s.D));
}

double slope_at_half(const ModelParams& params) {
    const double tau = params.tau;
    const SlopeConstants s = slope_constants(params);
    const double ratio =
        (s.G + s.H) / ((1.0 + sq((tau - 1.0) / (3.0 - tau))) * s.G + 2.0 * s.H);
    return -2.0 * (ratio - s.I / (s.I + s.J));
}

double slope_limit(double tau, SlopePoint point) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::domain_error("slope_limit: tau outside (2,3)");
    if (point == SlopePoint::AtHc) return -2.0 * (3.0 - tau);
    return -1.0 + 2.0 * (tau - 2.0) / (3.0 - sq(tau - 2.0));
}

SlopeEstimate slope_numeric(const ModelParams& params, Kernel kernel, double t, double dt,
                            double tol) {
    if (!(dt > 0.0)) throw std::invalid_argument("slope_numeric: dt must be > 0");
    check_t(params, t, "slope_numeric");
    const double tmax = 1.0 / (params.tau - 1.0);
    auto sig = [&](double x) { return sigma_n(params, kernel, x, SigmaRef::AtHc, tol); };
    double value;
    if (t - dt >= 0.0 && t + dt <= tmax) {
        value = (sig(t + dt) - sig(t - dt)) / (2.0 * dt);
    } else if (t + 2.0 * dt <= tmax) {
        // second-order forward difference
        value = (-3.0 * sig(t) + 4.0 * sig(t + dt) - sig(t + 2.0 * dt)) / (2.0 * dt);
    } else if (t - 2.0 * dt >= 0.0) {
        // second-order backward difference
        value = (3.0 * sig(t) - 4.0 * sig(t - dt) + sig(t - 2.0 * dt)) / (2.0 * dt);
    } else {
        throw std::invalid_argument("slope_numeric: dt too large for the t interval");
    }
    // sigma values carry roundoff of order eps/ln(N<h>); below this step the
    // difference quotient is dominated by noise.
    const bool reliable = dt >= 64.0 * std::numeric_limits<double>::epsilon();
    return {value, reliable};
}

// ---------------------------------------------------------------------------
// Poisson mixing
// ---------------------------------------------------------------------------

namespace {

// log of the Poisson mass g(k|h) at h = e^v
double log_poisson(double k, double v, double lgamma_k1) {
    return k * v - std::exp(v) - lgamma_k1;
}

std::vector<double> mixing_breakpoints(const ModelParams& params, std::uint64_t k) {
    const double kd = static_cast<double>(k);
    const double lhc = std::log(params.h_c);
    std::vector<double> pts;
    // flat-range segment boundaries plus a window around the Poisson peak
    pts.push_back(std::log(params.h_s * params.h_s / params.h_c));
    pts.push_back(std::log(params.h_s));
    if (k >= 1) {
        const double width = 12.0 * std::sqrt(kd) + 12.0;
        pts.push_back(std::log(std::max(1.0, kd - width)));
        pts.push_back(std::log(kd));
        pts.push_back(std::log(kd + width));
        pts.push_back(std::log(std::max(1.0, kd / 8.0)));
        pts.push_back(std::log(8.0 * kd));
    }
    return clip_breakpoints(pts, 0.0, lhc);
}

}  // namespace

double degree_prob(const ModelParams& params, std::uint64_t k) {
    const double tau = params.tau;
    const double kd = static_cast<double>(k);
    const double lg = std::lgamma(kd + 1.0);
    auto f = [&](double v) {
        return params.norm_c * std::exp((1.0 - tau) * v + log_poisson(kd, v, lg));
    };
    auto q = integrate_breakpoints(f, mixing_breakpoints(params, k), 1e-10, 1e-300);
    return q.value;
}

namespace {

// c(h) evaluations for smooth kernels are costly, so mixing integrals use a
// log-log interpolated cache per (params, kernel).
class CurveCache {
  public:
    CurveCache(const ModelParams& params, Kernel kernel, double tol) {
        const double lhc = std::log(params.h_c);
        const int per_decade = 32;
        const int count = std::max(8, static_cast<int>(lhc / std::log(10.0) * per_decade) + 1);
        lh_.resize(count);
        lc_.resize(count);
        for (int i = 0; i < count; ++i) {
            lh_[i] = lhc * i / (count - 1);
            lc_[i] = std::log(c_quadrature(params, kernel, std::exp(lh_[i]), tol));
        }
    }

    double operator()(double h) const {
        const double x = std::log(h);
        auto it = std::upper_bound(lh_.begin(), lh_.end(), x);
        std::size_t i = it == lh_.begin() ? 1 : static_cast<std::size_t>(it - lh_.begin());
        if (i >= lh_.size()) i = lh_.size() - 1;
        const double t = (x - lh_[i - 1]) / (lh_[i] - lh_[i - 1]);
        return std::exp(lc_[i - 1] + t * (lc_[i] - lc_[i - 1]));
    }

  private:
    std::vector<double> lh_, lc_;
};

}  // namespace

double cbar_from_ch(const ModelParams& params, Kernel kernel, std::uint64_t k, double tol) {
    if (k < 2) return 0.0;
    const double tau = params.tau;
    const double kd = static_cast<double>(k);
    const double lg = std::lgamma(kd + 1.0);

    std::shared_ptr<const CurveCache> cache;
    if (kernel != Kernel::Min) {
        static std::mutex mu;
        static std::shared_ptr<const CurveCache> cached;
        static std::uint64_t cached_n = 0;
        static double cached_tau = 0.0;
        static Kernel cached_kernel = Kernel::Min;
        std::lock_guard<std::mutex> lock(mu);
        if (!cached || cached_n != params.n || cached_tau != params.tau ||
            cached_kernel != kernel) {
            cached = std::make_shared<CurveCache>(params, kernel, std::min(tol, 1e-6));
            cached_n = params.n;
            cached_tau = params.tau;
            cached_kernel = kernel;
        }
        cache = cached;
    }

    auto c_at = [&](double h) {
        return kernel == Kernel::Min ? c_exact_min(params, h) : (*cache)(h);
    };
    auto f = [&](double v) {
        return params.norm_c *
               std::exp((1.0 - tau) * v + log_poisson(kd, v, lg)) * c_at(std::exp(v));
    };
    auto num = integrate_breakpoints(f, mixing_breakpoints(params, k), 1e-10, 1e-300);
    const double den = degree_prob(params, k);
    return num.value / den;
}

// ---------------------------------------------------------------------------
// dominant triangle
// ---------------------------------------------------------------------------

DominantTriangle dominant_triangle(const ModelParams& params, double h) {
    check_h(params, h, "dominant_triangle");
    DominantTriangle out;
    out.regime = classify_regime(params, h);
    const double nh = std::exp(params.log_nh);
    if (h < params.h_s) {
        // The partner-product bound h'h'' <= N<h> binds first; pick the
        // symmetric representative on it (capped by h',h'' <= N<h>/h, which
        // cannot bind below the structural cutoff).
        out.h_prime = out.h_dprime = params.h_s;
        out.saturated_edges = {TriangleEdge::VpVpp};
    } else {
        out.h_prime = out.h_dprime = nh / h;
        out.saturated_edges = {TriangleEdge::VVp, TriangleEdge::VVpp};
    }
    return out;
}

}  // namespace csnet
