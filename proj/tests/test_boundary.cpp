#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_values.hpp"
#include "seqcmf/boundary.hpp"
#include "seqcmf/core.hpp"

using namespace seqcmf;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST_CASE("closed form at vhat = 0, t = 1") {
    CHECK(mixture_half_width(1, 0.0, 0.5, 1.0) == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-15));
    CHECK(lower_bound(0.0, 1, 0.0, 0.5, 1.0) == doctest::Approx(-1.177410).epsilon(1e-6));
}

TEST_CASE("reference values of the half-width") {
    CHECK(mixture_half_width(1000, 0.25, 0.1, 0.06) == doctest::Approx(0.04670).epsilon(1e-3));
    CHECK(mixture_half_width(1000, 0.25, 0.05, 0.06) == doctest::Approx(0.05332).epsilon(1e-3));
    CHECK(lower_bound(0.1, 1000, 0.25, 0.1, 0.06) == doctest::Approx(0.05330).epsilon(1e-3));
}

TEST_CASE("half-width matches the 50-digit oracle") {
    for (const auto& p : oracle::kHalfWidth) {
        CAPTURE(p.t);
        CAPTURE(p.vhat);
        CAPTURE(p.alpha);
        CAPTURE(p.rho);
        CHECK(rel_err(mixture_half_width(p.t, p.vhat, p.alpha, p.rho), p.value) < 1e-12);
    }
}

TEST_CASE("rho calibration") {
    CHECK(rho_for_target_time(750, 0.1) == doctest::Approx(0.0788).epsilon(1e-3));
    CHECK(rho_for_target_time(1294, 0.1) == doctest::Approx(0.0600).epsilon(1e-3));
    for (const auto& p : oracle::kRho) CHECK(rel_err(rho_for_target_time(p.t_star, p.alpha), p.value) < 1e-12);
    CHECK_THROWS_AS(rho_for_target_time(100, 0.5), Error);
    CHECK_THROWS_AS(rho_for_target_time(0, 0.1), Error);
}

TEST_CASE("calibrated rho makes the boundary near-tightest at t*") {
    // For vhat = 1 the minimiser of t * l(t) / sqrt(t) over rho sits close to the calibrated rho.
    const std::uint64_t t_star = 2000;
    const double alpha = 0.05;
    const double tuned = rho_for_target_time(t_star, alpha);
    const double at_tuned = mixture_half_width(t_star, 1.0, alpha, tuned);
    for (double f : {0.25, 0.5, 2.0, 4.0}) CHECK(mixture_half_width(t_star, 1.0, alpha, tuned * f) > at_tuned);
}

TEST_CASE("monotonicity and limits") {
    double prev = 0.0;
    for (double v = 0.0; v <= 4.0; v += 0.25) {
        const double hw = mixture_half_width(500, v, 0.1, 0.06);
        CHECK(hw > prev);
        CHECK(std::isfinite(hw));
        prev = hw;
    }
    prev = INFINITY;
    for (double a : {1e-6, 1e-3, 0.01, 0.05, 0.1, 0.3, 0.49}) {
        const double hw = mixture_half_width(500, 0.25, a, 0.06);
        CHECK(hw < prev);
        prev = hw;
    }
    CHECK(mixture_half_width(1'000'000'000ULL, 0.25, 0.1, 0.06) < 1e-3);
    CHECK(mixture_half_width(std::uint64_t{1} << 62, 1.0, 0.1, 0.06) > 0.0);
}

TEST_CASE("lower bound stays below the running mean") {
    for (double psi : {-2.0, 0.0, 0.3, 1e6})
        for (std::uint64_t t : {1ULL, 10ULL, 100000ULL}) CHECK(lower_bound(psi, t, 0.1, 0.1, 0.06) < psi);
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(mixture_half_width(0, 0.25, 0.1, 0.06), Error);
    CHECK_THROWS_AS(mixture_half_width(10, -0.1, 0.1, 0.06), Error);
    CHECK_THROWS_AS(mixture_half_width(10, 0.25, 0.0, 0.06), Error);
    CHECK_THROWS_AS(mixture_half_width(10, 0.25, 0.1, 0.0), Error);
    CHECK_THROWS_AS((BoundaryParams{1.0, 0.06}.validate()), Error);
    CHECK_NOTHROW((BoundaryParams{0.1, 0.06}.validate()));
}
