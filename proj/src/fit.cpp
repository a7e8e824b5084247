#include "csnet/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csnet/parallel.hpp"
#include "csnet/rng.hpp"

namespace csnet {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q >= 1.0)) throw std::domain_error("hurwitz_zeta: need s > 1, q >= 1");
    constexpr int kDirect = 14;
    double sum = 0.0;
    for (int j = 0; j < kDirect; ++j) sum += std::exp(-s * std::log(q + j));
    const double big = q + kDirect;
    const double binv = 1.0 / big;
    const double bs = std::exp(-s * std::log(big));  // big^{-s}
    sum += bs * big / (s - 1.0);                     // big^{1-s}/(s-1)
    sum += 0.5 * bs;
    // Euler-Maclaurin correction terms with B2, B4, B6
    const double t1 = s * bs * binv / 12.0;
    const double t2 = s * (s + 1.0) * (s + 2.0) * bs * binv * binv * binv / 720.0;
    const double t3 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * bs * binv * binv *
                      binv * binv * binv / 30240.0;
    return sum + t1 - t2 + t3;
}

namespace {

struct TailView {
    // sorted distinct tail values with cumulative counts (<= value)
    std::vector<std::uint32_t> values;
    std::vector<std::size_t> cum;
    std::size_t n = 0;
    double sum_log = 0.0;
};

TailView make_tail(const std::vector<std::uint32_t>& sorted, std::uint32_t xmin) {
    TailView t;
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), xmin);
    t.n = static_cast<std::size_t>(sorted.end() - first);
    std::size_t count = 0;
    for (auto it = first; it != sorted.end();) {
        auto run = std::upper_bound(it, sorted.end(), *it);
        count += static_cast<std::size_t>(run - it);
        t.values.push_back(*it);
        t.cum.push_back(count);
        t.sum_log += std::log(static_cast<double>(*it)) * static_cast<double>(run - it);
        it = run;
    }
    return t;
}

// maximize -n ln zeta(alpha, xmin) - alpha * sum_log by golden-section search
double mle_exponent(const TailView& tail, std::uint32_t xmin) {
    const double nd = static_cast<double>(tail.n);
    auto neg_ll = [&](double alpha) {
        return nd * std::log(hurwitz_zeta(alpha, xmin)) + alpha * tail.sum_log;
    };
    double lo = 1.0001, hi = 8.0;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = neg_ll(x1), f2 = neg_ll(x2);
    for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = neg_ll(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = neg_ll(x2);
        }
        if (hi - lo < 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

double ks_distance(const TailView& tail, std::uint32_t xmin, double alpha) {
    const double z = hurwitz_zeta(alpha, xmin);
    const double nd = static_cast<double>(tail.n);
    double worst = 0.0;
    for (std::size_t i = 0; i < tail.values.size(); ++i) {
        const double emp = static_cast<double>(tail.cum[i]) / nd;
        const double model = 1.0 - hurwitz_zeta(alpha, tail.values[i] + 1.0) / z;
        worst = std::max(worst, std::abs(emp - model));
    }
    return worst;
}

FitResult fit_sorted(const std::vector<std::uint32_t>& sorted) {
    if (sorted.size() < 50) throw std::invalid_argument("fit_degree_tail: need >= 50 samples");
    if (sorted.front() == sorted.back())
        throw std::invalid_argument("fit_degree_tail: degenerate all-equal input");
    if (sorted.front() < 1) throw std::invalid_argument("fit_degree_tail: samples must be >= 1");

    const std::uint32_t p90 = sorted[(sorted.size() - 1) * 9 / 10];
    std::vector<std::uint32_t> candidates;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const std::uint32_t v = sorted[i];
        if (v > p90) break;
        if (candidates.empty() || candidates.back() != v) candidates.push_back(v);
    }

    FitResult best;
    bool have = false;
    for (const std::uint32_t xmin : candidates) {
        TailView tail = make_tail(sorted, xmin);
        if (tail.n < 10 || tail.values.size() < 2) continue;
        const double alpha = mle_exponent(tail, xmin);
        const double ks = ks_distance(tail, xmin, alpha);
        if (!have || ks < best.ks_distance) {
            best.exponent_hat = alpha;
            best.xmin = xmin;
            best.ks_distance = ks;
            best.n_tail = tail.n;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("fit_degree_tail: no viable xmin candidate");
    return best;
}

}  // namespace

FitResult fit_degree_tail(std::span<const std::uint32_t> samples) {
    std::vector<std::uint32_t> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return fit_sorted(sorted);
}

namespace {

// Inverse-CDF sampler for the fitted discrete power law: a survival table,
// re-anchored on exact zeta values every block, with a doubling search for
// the (rare) deep tail beyond the table.
class PowerLawSampler {
  public:
    PowerLawSampler(double alpha, std::uint32_t xmin) : alpha_(alpha), xmin_(xmin) {
        z_ = hurwitz_zeta(alpha, xmin);
        const std::size_t table = 1 << 16;
        surv_.resize(table);
        double s = 1.0;
        for (std::size_t i = 0; i < table; ++i) {
            if (i % 4096 == 0) s = hurwitz_zeta(alpha_, static_cast<double>(xmin_) + i) / z_;
            surv_[i] = s;
            s -= std::exp(-alpha_ * std::log(static_cast<double>(xmin_) + i)) / z_;
        }
    }

    std::uint32_t draw(double u) const {  // u in (0,1); X with P(X >= x) >= u
        if (u <= surv_.back()) return deep_tail(u);
        // first index with surv < u, answer is its predecessor's value
        auto it = std::lower_bound(surv_.begin(), surv_.end(), u,
                                   [](double s, double uu) { return s >= uu; });
        const std::size_t idx = static_cast<std::size_t>(it - surv_.begin());
        return xmin_ + static_cast<std::uint32_t>(idx) - 1;
    }

  private:
    std::uint32_t deep_tail(double u) const {
        // find smallest x with zeta(alpha,x+1)/z < u by doubling then bisection
        std::uint64_t lo = xmin_ + surv_.size() - 1, hi = lo;
        while (hurwitz_zeta(alpha_, static_cast<double>(hi + 1)) / z_ >= u) {
            lo = hi;
            hi *= 2;
            if (hi > (1ull << 40)) break;
        }
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (hurwitz_zeta(alpha_, static_cast<double>(mid + 1)) / z_ >= u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return static_cast<std::uint32_t>(std::min<std::uint64_t>(lo, 0xffffffffULL));
    }

    double alpha_;
    std::uint32_t xmin_;
    double z_;
    std::vector<double> surv_;
};

}  // namespace

std::vector<std::uint32_t> sample_discrete_power_law(double alpha, std::uint32_t xmin,
                                                     std::size_t count, std::uint64_t seed,
                                                     std::uint64_t stream) {
    PowerLawSampler sampler(alpha, xmin);
    std::vector<std::uint32_t> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = sampler.draw(u64_to_unit_open(keyed_u64(seed, stream, i)));
    return out;
}

double gof_pvalue(std::span<const std::uint32_t> samples, const FitResult& fit,
                  std::size_t replicates, std::uint64_t seed) {
    if (replicates < 50) throw std::invalid_argument("gof_pvalue: need >= 50 replicates");
    std::vector<std::uint32_t> body;
    for (auto v : samples)
        if (v < fit.xmin) body.push_back(v);
    const std::size_t n = samples.size();
    const double p_tail = static_cast<double>(n - body.size()) / static_cast<double>(n);
    PowerLawSampler sampler(fit.exponent_hat, fit.xmin);

    std::vector<std::uint8_t> exceeds(replicates, 0);
    parallel_for(replicates, [&](std::size_t rep) {
        CounterRng rng(seed, rng_stream::bootstrap + rep);
        std::vector<std::uint32_t> sample(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (body.empty() || rng.next_unit() < p_tail)
                sample[i] = sampler.draw(rng.next_unit_open());
            else
                sample[i] = body[rng.next_below(body.size())];
        }
        std::sort(sample.begin(), sample.end());
        double ks;
        try {
            ks = fit_sorted(sample).ks_distance;
        } catch (const std::invalid_argument&) {
            ks = 1.0;  // degenerate replicate counts against the model
        }
        exceeds[rep] = ks >= fit.ks_distance ? 1 : 0;
    });
    std::size_t count = 0;
    for (auto e : exceeds) count += e;
    return static_cast<double>(count) / static_cast<double>(replicates);
}

double fit_spectrum_exponent(const SpectrumTable& table, double k_min) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& row : table.rows) {
        if (row.k < k_min || !(row.cbar > 0.0)) continue;
        const double x = std::log(row.k), y = std::log(row.cbar);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 5)
        throw std::invalid_argument("fit_spectrum_exponent: need >= 5 rows with k >= k_min");
    const double nd = static_cast<double>(n);
    const double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
    return -slope;
}

}  // namespace csnet
