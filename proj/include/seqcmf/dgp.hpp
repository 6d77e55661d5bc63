#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "seqcmf/core.hpp"
#include "seqcmf/rng.hpp"

namespace seqcmf {

/// Standard normal CDF via erfc. Relative error is about (1 + z^2) * 1e-16,
/// dominated by rounding of z / sqrt(2) deep in the lower tail.
double std_normal_cdf(double z);

/// Single-index latent Phi((2/sqrt(d)) * sum_j (x_j - 0.5)) in (0, 1).
/// `expected_dim` == 0 accepts any length >= 1.
double latent(std::span<const double> x, std::size_t expected_dim = 10);

enum class Shape { Null, Step, Bump, Sine };

Shape parse_shape(const std::string& name);
std::string to_string(Shape shape);

struct ShapeSpec {
    Shape shape = Shape::Null;
    double delta = 0.0;
    double concentration = 5.0;
    std::size_t dimension = 10;

    /// Throws OutOfRange if the mean could leave (0,1) or c, d are invalid.
    void validate() const;
};

/// Benchmark settings: null c=5; step delta=0.02 c=50; bump and sine delta=0.15 c=5.
ShapeSpec default_shape_spec(Shape shape);

/// m(zeta) for the shape; the bump window [0.4, 0.6] is closed.
double mean_shape(const ShapeSpec& spec, double zeta);

/// x ~ Unif[0,1]^d, y ~ Beta(c m(zeta), c (1 - m(zeta))).
ObservationCmf sample_dgp1(const ShapeSpec& spec, Rng& rng);

/// Conditional mean tau(x) = m(latent(x)) of a DGP1 spec.
double dgp1_mean(const ShapeSpec& spec, std::span<const double> x);

/// Synthetic randomized experiment with binary outcomes:
/// mu(x,0) = mu0(x), mu(x,1) = mu0(x) + tau(x), A ~ Bern(pi1(x)).
struct Dgp2Spec {
    using Fn = std::function<double(std::span<const double>)>;
    Fn mu0;
    Fn tau;
    Fn pi1;
    std::size_t dimension = 10;
};

ObservationCate sample_dgp2(const Dgp2Spec& spec, Rng& rng);

class Dgp1Stream final : public ObservationStream {
public:
    Dgp1Stream(ShapeSpec spec, std::uint64_t seed);
    std::optional<Observation> next() override { return sample_dgp1(spec_, rng_); }

private:
    ShapeSpec spec_;
    Rng rng_;
};

class Dgp2Stream final : public ObservationStream {
public:
    Dgp2Stream(Dgp2Spec spec, std::uint64_t seed) : spec_(std::move(spec)), rng_(seed) {}
    std::optional<Observation> next() override { return sample_dgp2(spec_, rng_); }

private:
    Dgp2Spec spec_;
    Rng rng_;
};

} // namespace seqcmf
