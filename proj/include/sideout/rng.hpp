// Deterministic random number generation. All randomness in the project
// flows from one root seed; child streams are derived from the root seed and
// a component name, so partial re-runs stay consistent.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace sideout {

// SplitMix64. Tiny, stable across platforms, good enough for simulation
// and sampling work at this scale.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi].
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_u64() % (hi - lo + 1);
    }

    // Uniform in [0, n).
    std::size_t next_below(std::size_t n) { return next_u64() % n; }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Box-Muller, no caching so the stream position stays predictable.
    double next_normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

  private:
    std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Child seed for a named component ("svm", "shap.background", ...).
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view component) {
    Rng mix(root ^ fnv1a64(component));
    return mix.next_u64();
}

}  // namespace sideout
