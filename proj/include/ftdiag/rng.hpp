#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ftdiag {

/// Seedable, splittable random stream over std::mt19937_64.
///
/// Draw helpers avoid the standard distributions, whose algorithms differ
/// between standard libraries, so a seed reproduces the same numbers on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    /// Independent stream identified by `stream`; does not advance this one.
    [[nodiscard]] Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)));
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in [0, n); n > 0.
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ftdiag
