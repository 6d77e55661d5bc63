#include "seqcmf/dgp.hpp"

#include <cmath>
#include <numbers>

namespace seqcmf {

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double latent(std::span<const double> x, std::size_t expected_dim) {
    if (x.empty() || (expected_dim != 0 && x.size() != expected_dim))
        throw Error(ErrorKind::DimensionMismatch, "latent index expects dimension " + std::to_string(expected_dim));
    double s = 0.0;
    for (double v : x) s += v - 0.5;
    return std_normal_cdf(2.0 / std::sqrt(static_cast<double>(x.size())) * s);
}

Shape parse_shape(const std::string& name) {
    if (name == "null") return Shape::Null;
    if (name == "step") return Shape::Step;
    if (name == "bump") return Shape::Bump;
    if (name == "sine") return Shape::Sine;
    throw Error(ErrorKind::InvalidInput, "unknown dgp '" + name + "'");
}

std::string to_string(Shape shape) {
    switch (shape) {
    case Shape::Null: return "null";
    case Shape::Step: return "step";
    case Shape::Bump: return "bump";
    case Shape::Sine: return "sine";
    }
    return "null";
}

void ShapeSpec::validate() const {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::OutOfRange, "delta");
    if (!(concentration > 0.0) || !std::isfinite(concentration)) throw Error(ErrorKind::OutOfRange, "concentration");
    if (dimension < 1) throw Error(ErrorKind::OutOfRange, "dimension");
    // Every shape stays within 0.5 +- delta.
    if (shape != Shape::Null && !(delta < 0.5)) throw Error(ErrorKind::OutOfRange, "delta");
}

ShapeSpec default_shape_spec(Shape shape) {
    switch (shape) {
    case Shape::Null: return {Shape::Null, 0.0, 5.0, 10};
    case Shape::Step: return {Shape::Step, 0.02, 50.0, 10};
    case Shape::Bump: return {Shape::Bump, 0.15, 5.0, 10};
    case Shape::Sine: return {Shape::Sine, 0.15, 5.0, 10};
    }
    return {};
}

double mean_shape(const ShapeSpec& spec, double zeta) {
    switch (spec.shape) {
    case Shape::Null: return 0.5;
    case Shape::Step: return zeta >= 0.5 ? 0.5 + spec.delta : 0.5 - spec.delta;
    case Shape::Bump: return (zeta >= 0.4 && zeta <= 0.6) ? 0.5 + spec.delta : 0.5;
    case Shape::Sine: return 0.5 + spec.delta * std::sin(4.0 * std::numbers::pi * zeta);
    }
    return 0.5;
}

double dgp1_mean(const ShapeSpec& spec, std::span<const double> x) {
    return mean_shape(spec, latent(x, spec.dimension));
}

ObservationCmf sample_dgp1(const ShapeSpec& spec, Rng& rng) {
    ObservationCmf obs;
    obs.x.resize(spec.dimension);
    for (auto& v : obs.x) v = rng.uniform();
    const double m = dgp1_mean(spec, obs.x);
    obs.y = rng.beta(spec.concentration * m, spec.concentration * (1.0 - m));
    return obs;
}

ObservationCate sample_dgp2(const Dgp2Spec& spec, Rng& rng) {
    ObservationCate obs;
    obs.x.resize(spec.dimension);
    for (auto& v : obs.x) v = rng.uniform();
    obs.pi1 = spec.pi1(obs.x);
    if (!(obs.pi1 > 0.0 && obs.pi1 < 1.0)) throw Error(ErrorKind::OutOfRange, "pi1");
    obs.a = rng.bernoulli(obs.pi1) ? 1 : 0;
    const double mu0 = spec.mu0(obs.x);
    const double mu = obs.a == 1 ? mu0 + spec.tau(obs.x) : mu0;
    if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorKind::OutOfRange, "mu(x,a)");
    obs.y = rng.bernoulli(mu) ? 1.0 : 0.0;
    return obs;
}

Dgp1Stream::Dgp1Stream(ShapeSpec spec, std::uint64_t seed) : spec_(spec), rng_(seed) { spec_.validate(); }

} // namespace seqcmf
