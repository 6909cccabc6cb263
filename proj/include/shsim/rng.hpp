#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace shsim {

using Rng = std::mt19937_64;

// Uniform draw in [0, n) via rejection sampling. Written out explicitly (rather
// than std::uniform_int_distribution) so records replay identically across
// standard library implementations.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Fisher-Yates with the portable draw above.
template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

template <typename T>
const T& pick_uniform(const std::vector<T>& v, Rng& rng) {
    return v[static_cast<std::size_t>(bounded(rng, v.size()))];
}

} // namespace shsim
