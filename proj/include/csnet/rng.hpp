#pragma once

#include <cstdint>

namespace csnet {

// Counter-based random numbers: every variate is a pure function of
// (seed, stream, counter), so draws are order-independent and parallel
// generation stays deterministic no matter how work is scheduled.

inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t stream,
                                         std::uint64_t counter) noexcept {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (stream + 0xbb67ae8584caa73bULL));
    h = mix64(h ^ (counter + 0x3c6ef372fe94f82bULL));
    return h;
}

// Uniform on [0,1) with 53 random bits.
inline constexpr double u64_to_unit(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform on (0,1); safe to pass through log().
inline constexpr double u64_to_unit_open(std::uint64_t x) noexcept {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() noexcept { return keyed_u64(seed_, stream_, counter_++); }
    double next_unit() noexcept { return u64_to_unit(next_u64()); }
    double next_unit_open() noexcept { return u64_to_unit_open(next_u64()); }

    // Unbiased integer in [0, n) via Lemire's multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

// Stream-id bases keep independent subsystems of one run decorrelated.
namespace rng_stream {
inline constexpr std::uint64_t hidden_values = 0x1000000000000000ULL;
inline constexpr std::uint64_t edge_rows = 0x2000000000000000ULL;
inline constexpr std::uint64_t degree_draws = 0x3000000000000000ULL;
inline constexpr std::uint64_t stub_shuffle = 0x4000000000000000ULL;
inline constexpr std::uint64_t bootstrap = 0x5000000000000000ULL;
}  // namespace rng_stream

}  // namespace csnet
