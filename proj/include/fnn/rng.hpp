#pragma once

// Seeded randomness with named substreams. Every draw in the project flows
// from one user seed; substreams are derived by hashing (seed, label, index),
// so adding a new consumer does not reshuffle draws elsewhere.

#include <cstdint>
#include <random>
#include <string_view>

namespace fnn {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(detail::splitmix64(seed)) {}

    /// Substream keyed by (seed, label, index).
    static Rng substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
        return Rng(derive_seed(seed, label, index));
    }

    /// The substream key itself, for code that seeds its own generators.
    static std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                     std::uint64_t index = 0) {
        std::uint64_t h = detail::splitmix64(seed ^ detail::hash_label(label));
        return detail::splitmix64(h + 0x632be59bd9b4e019ULL * (index + 1));
    }

    /// Uniform in [0, 1), 53-bit mantissa. Fully specified conversion, so
    /// streams are identical across platforms and thread counts.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace fnn
