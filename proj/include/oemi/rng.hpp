// rng.hpp — counter-based SplitMix64.
//
// Output k of stream `seed` is mix(seed + (k+1) * 0x9E3779B97F4A7C15), i.e. the
// k-th value of the reference SplitMix64 generator seeded with `seed`. Being a
// pure function of (seed, k) it is order-insensitive and safe to evaluate from
// any thread. Reference test vectors (seed 0): E220A8397B1DCDAF,
// 6E789E6AA1B965F4, 06C45D188009454F.

#pragma once

#include <cstdint>

namespace oemi::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform in [0, 1) with 53-bit resolution.
inline double unit_at(std::uint64_t seed, std::uint64_t k) {
    return double(splitmix64_at(seed, k) >> 11) * 0x1.0p-53;
}

// Uniform in [-1, 1).
inline double symmetric_at(std::uint64_t seed, std::uint64_t k) {
    return 2.0 * unit_at(seed, k) - 1.0;
}

// Derived stream seed for grid point `index` (per-point witness seeds).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_at(seed, index);
}

}  // namespace oemi::rng
