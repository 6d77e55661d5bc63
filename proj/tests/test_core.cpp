#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "seqcmf/core.hpp"

using namespace seqcmf;

namespace {

ErrorKind kind_thrown(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected seqcmf::Error");
    return ErrorKind::InvalidInput;
}

std::string detail_thrown(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.detail();
    }
    FAIL("expected seqcmf::Error");
    return {};
}

} // namespace

TEST_CASE("default configuration is accepted") {
    const TestConfig cfg = validate_config({});
    CHECK(cfg.alpha() == 0.1);
    CHECK(cfg.rho() == 0.06);
    CHECK(cfg.t0() == 250);
    CHECK(cfg.eps_scale() == 0.1);
    CHECK(cfg.gamma() == 0.24);
    CHECK(cfg.var_floor() == 0.01);
    CHECK(cfg.warnings().empty());
}

TEST_CASE("configuration range errors name the field") {
    TestConfig::Params p;
    p.alpha = 0.0;
    CHECK(kind_thrown([&] { validate_config(p); }) == ErrorKind::OutOfRange);
    CHECK(detail_thrown([&] { validate_config(p); }) == "alpha");
    p.alpha = 1.0;
    CHECK(detail_thrown([&] { validate_config(p); }) == "alpha");

    p = {};
    p.rho = -1;
    CHECK(detail_thrown([&] { validate_config(p); }) == "rho");
    p = {};
    p.t0 = 0;
    CHECK(detail_thrown([&] { validate_config(p); }) == "t0");
    p = {};
    p.var_floor = 0;
    CHECK(detail_thrown([&] { validate_config(p); }) == "var_floor");
    p = {};
    p.var_ceiling = 0.005;
    CHECK(detail_thrown([&] { validate_config(p); }) == "var_ceiling");
    p = {};
    p.gamma = -0.1;
    CHECK(detail_thrown([&] { validate_config(p); }) == "gamma");
    p = {};
    p.eps_scale = 0;
    CHECK(detail_thrown([&] { validate_config(p); }) == "eps_scale");
}

TEST_CASE("fast threshold decay is accepted with a warning") {
    TestConfig::Params p;
    p.gamma = 0.5;
    const TestConfig cfg = validate_config(p);
    CHECK(cfg.gamma() == 0.5);
    CHECK(cfg.warnings().size() == 1);
}

TEST_CASE("constant nulls") {
    const std::vector<double> x{0.1, 0.9, 0.3};
    CHECK(eval_null(NullSpec::constant(0.5), x) == 0.5);
    CHECK(eval_null(NullSpec::constant(0.0), x) == 0.0);
    CHECK(NullSpec::constant(0.5).constant_value() == 0.5);
    CHECK(kind_thrown([] { NullSpec::constant(2.0, 1.0)(std::vector<double>{0.0}); }) == ErrorKind::BoundViolated);
}

TEST_CASE("tabulated nulls interpolate and respect the bound") {
    const auto f = NullSpec::tabulated({0.0, 1.0}, {0.2, 0.4}, 1.0);
    CHECK(f(std::vector<double>{0.5}) == doctest::Approx(0.3));
    CHECK(f(std::vector<double>{-3.0}) == doctest::Approx(0.2));
    CHECK(f(std::vector<double>{7.0}) == doctest::Approx(0.4));
    CHECK_FALSE(f.constant_value().has_value());

    const auto g = NullSpec::tabulated({0.0, 1.0}, {0.7, 0.7}, 0.4);
    CHECK(kind_thrown([&] { eval_null(g, std::vector<double>{0.5}); }) == ErrorKind::BoundViolated);

    const auto h = NullSpec::tabulated({0.0, 1.0}, {0.0, 1.0}, 1.0, 2, 3);
    CHECK(h(std::vector<double>{9.0, 9.0, 0.25}) == doctest::Approx(0.25));
    CHECK(kind_thrown([&] { h(std::vector<double>{0.25}); }) == ErrorKind::DimensionMismatch);

    CHECK(kind_thrown([] { NullSpec::tabulated({1.0, 0.0}, {0.0, 0.0}, 1.0); }) == ErrorKind::InvalidInput);
    CHECK(kind_thrown([] { NullSpec::tabulated({0.0}, {0.0, 1.0}, 1.0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("callable nulls check dimension") {
    const auto f = NullSpec::callable([](std::span<const double> x) { return x[0] - x[1]; }, 1.0, 2);
    CHECK(f(std::vector<double>{0.75, 0.5}) == doctest::Approx(0.25));
    CHECK(kind_thrown([&] { f(std::vector<double>{0.75}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_thrown([] { NullSpec::callable(nullptr, 1.0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("observation validation") {
    CHECK_NOTHROW(validate(ObservationCmf{{0.1, 0.2}, 0.5}));
    CHECK(kind_thrown([] { validate(ObservationCmf{{}, 0.5}); }) == ErrorKind::InvalidInput);
    CHECK(kind_thrown([] { validate(ObservationCmf{{0.1}, std::nan("")}); }) == ErrorKind::InvalidInput);

    ObservationCate c{{0.5}, 1, 1.0, 0.5};
    CHECK_NOTHROW(validate(c));
    CHECK(c.propensity(1) == 0.5);
    c.pi1 = 0.0923;
    CHECK(c.propensity(0) == doctest::Approx(0.9077));
    c.pi1 = 1.0;
    CHECK(kind_thrown([&] { validate(c); }) == ErrorKind::InvalidInput);
    c.pi1 = 0.5;
    c.a = 2;
    CHECK(kind_thrown([&] { validate(c); }) == ErrorKind::InvalidInput);

    const Observation o = ObservationCate{{0.25, 0.75}, 0, 0.0, 0.3};
    CHECK(kind_of(o) == StreamKind::Cate);
    CHECK(context_of(o).size() == 2);
    CHECK(context_of(o)[1] == 0.75);
}

TEST_CASE("vector streams are exhausted in order") {
    VectorStream s({ObservationCmf{{0.0}, 1.0}, ObservationCmf{{1.0}, 2.0}});
    CHECK(std::get<ObservationCmf>(*s.next()).y == 1.0);
    CHECK(std::get<ObservationCmf>(*s.next()).y == 2.0);
    CHECK_FALSE(s.next().has_value());
}

TEST_CASE("parse errors carry their line") {
    const ParseError e(17, "bad field");
    CHECK(e.line() == 17);
    CHECK(e.kind() == ErrorKind::ParseError);
}
