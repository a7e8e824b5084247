#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csnet/analytic.hpp"
#include "csnet/fit.hpp"
#include "csnet/model.hpp"
#include "csnet/rng.hpp"

using namespace csnet;

TEST_CASE("Hurwitz zeta against reference values") {
    CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-10));
    CHECK(hurwitz_zeta(2.5, 1.0) == doctest::Approx(1.3414872572509171).epsilon(1e-10));
    CHECK(hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595943).epsilon(1e-10));
    // zeta(s, q) = zeta(s, q+1) + q^{-s}
    for (double s : {1.5, 2.3, 3.7}) {
        for (double q : {1.0, 4.0, 50.0}) {
            CHECK(hurwitz_zeta(s, q) ==
                  doctest::Approx(hurwitz_zeta(s, q + 1.0) + std::pow(q, -s)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), std::domain_error);
}

TEST_CASE("power-law sampler matches its own law") {
    const auto s = sample_discrete_power_law(2.5, 1, 200000, 5);
    const double z = hurwitz_zeta(2.5, 1.0);
    const double n = static_cast<double>(s.size());
    for (std::uint32_t x : {1u, 2u, 3u, 5u}) {
        const double model = std::pow(x, -2.5) / z;
        const double emp =
            static_cast<double>(std::count(s.begin(), s.end(), x)) / n;
        const double se = std::sqrt(model * (1.0 - model) / n);
        CHECK(std::abs(emp - model) < 4.0 * se);
    }
    CHECK(sample_discrete_power_law(2.5, 1, 100, 5) ==
          std::vector<std::uint32_t>(s.begin(), s.begin() + 100));
    CHECK(*std::min_element(s.begin(), s.end()) >= 1);
}

TEST_CASE("tail fit recovers synthetic exponents") {
    std::vector<double> hats;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = sample_discrete_power_law(2.5, 1, 100000, 300 + seed);
        const auto fit = fit_degree_tail(s);
        hats.push_back(fit.exponent_hat);
        CHECK(fit.exponent_hat > 2.40);
        CHECK(fit.exponent_hat < 2.60);
        CHECK(fit.n_tail >= 10);
        CHECK(fit.xmin >= 1);
    }
    std::sort(hats.begin(), hats.end());
    CHECK(std::abs(0.5 * (hats[9] + hats[10]) - 2.5) < 0.05);
}

TEST_CASE("median bias stays small across exponents") {
    for (double ex : {2.1, 2.5, 2.9}) {
        std::vector<double> hats;
        for (int t = 0; t < 7; ++t)
            hats.push_back(
                fit_degree_tail(sample_discrete_power_law(ex, 1, 100000, 100 * t + 7)).exponent_hat);
        std::sort(hats.begin(), hats.end());
        CHECK(std::abs(hats[3] - ex) < 0.05);
    }
}

TEST_CASE("fit invariances") {
    auto s = sample_discrete_power_law(2.5, 1, 60000, 9);
    const auto base = fit_degree_tail(s);

    // permutation invariance
    CounterRng rng(17, 0);
    for (std::size_t i = s.size(); i > 1; --i) std::swap(s[i - 1], s[rng.next_below(i)]);
    const auto shuffled = fit_degree_tail(s);
    CHECK(shuffled.exponent_hat == base.exponent_hat);
    CHECK(shuffled.xmin == base.xmin);
    CHECK(shuffled.ks_distance == base.ks_distance);

    // duplicating every sample leaves the estimate unchanged
    std::vector<std::uint32_t> doubled;
    doubled.reserve(2 * s.size());
    doubled.insert(doubled.end(), s.begin(), s.end());
    doubled.insert(doubled.end(), s.begin(), s.end());
    const auto dup = fit_degree_tail(doubled);
    CHECK(dup.exponent_hat == doctest::Approx(base.exponent_hat).epsilon(1e-10));
    CHECK(dup.xmin == base.xmin);
}

TEST_CASE("geometric samples fit power laws badly") {
    CounterRng rng(99, 2);
    std::vector<std::uint32_t> geo(100000);
    for (auto& v : geo)
        v = 1 + static_cast<std::uint32_t>(
                    std::floor(std::log(rng.next_unit_open()) / std::log(1.0 - 0.35)));
    const auto fg = fit_degree_tail(geo);
    const auto fp = fit_degree_tail(sample_discrete_power_law(2.5, 1, 100000, 3));
    CHECK(fg.ks_distance > 5.0 * fp.ks_distance);
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(fit_degree_tail(std::vector<std::uint32_t>(10, 3)), std::invalid_argument);
    CHECK_THROWS_AS(fit_degree_tail(std::vector<std::uint32_t>(500, 7)), std::invalid_argument);
    const auto s = sample_discrete_power_law(2.5, 1, 1000, 1);
    const auto fit = fit_degree_tail(s);
    CHECK_THROWS_AS(gof_pvalue(s, fit, 10, 1), std::invalid_argument);
}

TEST_CASE("goodness of fit separates power laws from log-normals") {
    int accept = 0;
    for (std::uint64_t t = 0; t < 8; ++t) {
        const auto s = sample_discrete_power_law(2.5, 1, 30000, 40 + t);
        const auto fit = fit_degree_tail(s);
        const double p = gof_pvalue(s, fit, 60, 50 + t);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        if (p > 0.10) ++accept;
    }
    CHECK(accept >= 6);

    int reject = 0;
    for (std::uint64_t t = 0; t < 4; ++t) {
        CounterRng rng(55 + t, 1);
        std::vector<std::uint32_t> s(20000);
        for (auto& v : s) {
            const double u1 = rng.next_unit_open(), u2 = rng.next_unit_open();
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            v = static_cast<std::uint32_t>(std::max(1.0, std::round(std::exp(0.5 + 1.2 * z))));
        }
        const auto fit = fit_degree_tail(s);
        if (gof_pvalue(s, fit, 60, 70 + t) < 0.10) ++reject;
    }
    CHECK(reject >= 3);
}

TEST_CASE("spectrum exponent: exact log-linear input and invariances") {
    SpectrumTable t;
    for (std::uint32_t k = 4; k <= 400; k *= 2)
        t.rows.push_back({static_cast<double>(k), 1, std::pow(k, -1.5)});
    CHECK(fit_spectrum_exponent(t, 4) == doctest::Approx(1.5).epsilon(1e-12));

    SpectrumTable scaled = t;
    for (auto& r : scaled.rows) r.cbar *= 7.25;
    CHECK(fit_spectrum_exponent(scaled, 4) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(fit_spectrum_exponent(t, 300), std::invalid_argument);
}

TEST_CASE("analytic spectrum tail reproduces the finite-size slope") {
    const auto p = derive_params(100000000, 2.5);
    SpectrumTable t;
    for (double k = p.h_s; k < p.h_c * 0.98; k *= 1.25)
        t.rows.push_back({k, 1, cbar_from_ch(p, Kernel::Min, static_cast<std::uint64_t>(k))});
    const double alpha = fit_spectrum_exponent(t, p.h_s);
    CHECK(std::abs(alpha - std::abs(slope_at_hc(p))) < 0.15);
    // strictly shallower than the limiting exponent 2(3-tau)
    CHECK(alpha < 2.0 * (3.0 - 2.5));
}
