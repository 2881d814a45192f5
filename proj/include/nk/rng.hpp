#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nk {

// Stateless counter-based normals: each draw is a pure function of
// (key, step, component), so paths can be generated in any order.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Path k of a run seeded with s uses key s ^ k.
inline std::uint64_t path_key(std::uint64_t seed, std::uint64_t path_index) { return seed ^ path_index; }

inline double uniform_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double counter_normal(std::uint64_t key, std::uint64_t step, unsigned component) {
    const std::uint64_t base = splitmix64(splitmix64(key) ^ (step * 8 + component));
    const double u1 = uniform_open(base);
    const double u2 = uniform_open(splitmix64(base));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace nk
