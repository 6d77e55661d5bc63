#pragma once

#include <cstdint>
#include <random>

namespace seqcmf {

/// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for replicate `index` of a run seeded with `base`:
/// splitmix64(base ^ splitmix64(index)). Depends only on (base, index), so
/// replicates can be scheduled in any order.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(base ^ splitmix64(index));
}

/// Reproducible generator. The engine is mt19937_64 and every transform is
/// implemented here, so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal, Marsaglia polar method.
    double normal();

    /// Gamma(shape, 1). Marsaglia-Tsang squeeze; shapes below 1 are boosted
    /// through Gamma(shape + 1) * U^(1/shape).
    double gamma(double shape);

    /// Beta(a, b) as G_a / (G_a + G_b), kept strictly inside (0, 1).
    double beta(double a, double b);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace seqcmf
