#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "seqcmf/harness.hpp"

using namespace seqcmf;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

Settings small(Shape dgp, std::size_t horizon, std::size_t replicates) {
    Settings s;
    s.dgp = dgp;
    s.horizon = horizon;
    s.replicates = replicates;
    s.test.seed = 2024;
    return s;
}

} // namespace

TEST_CASE("real formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, 0.0}) {
        const std::string s = format_real(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("Wilson interval") {
    const auto [lo, hi] = wilson_interval(10, 100);
    CHECK(lo == doctest::Approx(0.0552).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.1744).epsilon(1e-3));
    CHECK(lo == doctest::Approx(0.055229).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.174366).epsilon(1e-4));
    CHECK(wilson_interval(0, 20).first == 0.0);
    CHECK(wilson_interval(20, 20).second == 1.0);
}

TEST_CASE("empirical CDF") {
    auto t = ecdf({100, 200, std::nullopt}, {150});
    REQUIRE(t.size() == 1);
    CHECK(t[0].fraction_rejected == doctest::Approx(1.0 / 3.0));

    t = ecdf({std::nullopt, std::nullopt}, {10, 20, 30});
    for (const auto& r : t) {
        CHECK(r.fraction_rejected == 0.0);
        CHECK(r.wilson_lo == 0.0);
    }

    t = ecdf({7}, {5, 6, 7, 8});
    CHECK(t[0].fraction_rejected == 0.0);
    CHECK(t[1].fraction_rejected == 0.0);
    CHECK(t[2].fraction_rejected == 1.0);
    CHECK(t[3].fraction_rejected == 1.0);

    CHECK_THROWS_AS(ecdf({1}, {5, 3}), Error);
}

TEST_CASE("CDF grid ends at the horizon") {
    CHECK(cdf_grid(120, 50) == std::vector<std::size_t>{50, 100, 120});
    CHECK(cdf_grid(100, 50) == std::vector<std::size_t>{50, 100});
    CHECK_THROWS_AS(cdf_grid(100, 0), Error);
}

TEST_CASE("stream CSV parsing") {
    std::istringstream in("x1,x2,y\n0.1,0.2,0.7\n\n0.3,0.4,0.1\n");
    CsvStream s(in);
    CHECK(s.kind() == StreamKind::Cmf);
    CHECK(s.dim() == 2);
    const auto a = std::get<ObservationCmf>(*s.next());
    CHECK(a.x == std::vector<double>{0.1, 0.2});
    CHECK(a.y == 0.7);
    CHECK(s.next().has_value());
    CHECK_FALSE(s.next().has_value());

    std::istringstream cate("x1,a,y,pi1\n0.5,1,1,0.0923\n");
    CsvStream c(cate);
    CHECK(c.kind() == StreamKind::Cate);
    const auto o = std::get<ObservationCate>(*c.next());
    CHECK(o.a == 1);
    CHECK(o.pi1 == 0.0923);
}

TEST_CASE("stream CSV errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            CsvStream s(in);
            while (s.next()) {
            }
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("x1,a,y,pi1\n0.5,1,1,0.5\n0.5,0,1,1.2\n") == 3);
    CHECK(line_of("x1,y\n0.5\n") == 2);
    CHECK(line_of("x1,y\n0.5,abc\n") == 2);
    CHECK(line_of("x1,a,y,pi1\n0.5,2,1,0.5\n") == 2);
    CHECK(line_of("x2,y\n0.5,1\n") == 1);
    CHECK(line_of("") == 1);
    CHECK(line_of("x1,z\n") == 1);
}

TEST_CASE("observation writer matches the reader") {
    std::ostringstream os;
    os << stream_header(StreamKind::Cate, 2) << '\n';
    const ObservationCate o{{0.1, 1.0 / 3.0}, 0, 1.0, 0.25};
    write_observation(os, o);
    std::istringstream in(os.str());
    CsvStream s(in);
    const auto back = std::get<ObservationCate>(*s.next());
    CHECK(back.x == o.x);
    CHECK(back.a == o.a);
    CHECK(back.y == o.y);
    CHECK(back.pi1 == o.pi1);
}

TEST_CASE("three-row stream gives three records and no rejection") {
    std::istringstream in("x1,x2,y\n0.1,0.2,0.7\n0.5,0.5,0.4\n0.9,0.1,0.6\n");
    CsvStream stream(in);
    std::ostringstream out;
    const auto sum = run_stream(stream, stream.kind(), stream.dim(), Settings{}, out);
    CHECK(sum.t_consumed == 3);
    CHECK_FALSE(sum.n_f.has_value());
    CHECK(count_lines(out.str()) == 4);
    CHECK(out.str().rfind(kRecordsHeader, 0) == 0);
    const auto j = sum.to_json(Settings{}, stream.kind());
    CHECK(j["n_f"].is_null());
    CHECK(j["config"]["alpha"] == 0.1);
}

TEST_CASE("checkpoint stride writes the last step too") {
    Settings s = small(Shape::Null, 25, 1);
    s.checkpoint_stride = 10;
    std::ostringstream dump;
    dump_replicate_stream(s, 0, dump);
    std::istringstream in(dump.str());
    CsvStream stream(in);
    std::ostringstream out;
    run_stream(stream, stream.kind(), stream.dim(), s, out);
    CHECK(count_lines(out.str()) == 1 + 3);
}

TEST_CASE("a dumped replicate stream reproduces the in-memory replicate") {
    for (Shape shape : {Shape::Step, Shape::Sine}) {
        Settings s = small(shape, 3000, 4);
        s.test.t0 = 100;
        for (std::size_t r = 0; r < 4; ++r) {
            const auto direct = run_replicate(s, r);
            std::stringstream dump;
            dump_replicate_stream(s, r, dump);
            CsvStream stream(dump);
            Settings rs = s;
            rs.test.seed = replicate_seed(s.test.seed, r);
            rs.early_stop = true;
            rs.checkpoint_stride = 1000000;
            std::ostringstream out;
            const auto replay = run_stream(stream, stream.kind(), stream.dim(), rs, out);
            CAPTURE(r);
            CHECK(replay.n_f == direct);
        }
    }
}

TEST_CASE("simulation is independent of the thread count") {
    Settings s = small(Shape::Step, 1500, 6);
    s.test.t0 = 100;
    s.threads = 1;
    const auto a = simulate(s);
    s.threads = 3;
    const auto b = simulate(s);
    CHECK(a.n_f == b.n_f);
    CHECK(a.seeds == b.seeds);
    std::ostringstream ca, cb, ta, tb;
    write_cdf(ca, a.cdf);
    write_cdf(cb, b.cdf);
    write_times(ta, a);
    write_times(tb, b);
    CHECK(ca.str() == cb.str());
    CHECK(ta.str() == tb.str());
}

TEST_CASE("single replicate CDF is a step function") {
    Settings s = small(Shape::Step, 4000, 1);
    s.test.t0 = 50;
    s.grid_stride = 10;
    const auto res = simulate(s);
    const auto nf = res.n_f[0];
    for (const auto& row : res.cdf) CHECK(row.fraction_rejected == ((nf && row.t >= *nf) ? 1.0 : 0.0));
}

TEST_CASE("rejection times encode infinity as an empty field") {
    SimulationResult r;
    r.seeds = {1, 2};
    r.n_f = {std::nullopt, 17};
    std::ostringstream os;
    write_times(os, r);
    CHECK(os.str() == "replicate,seed,n_f\n0,1,\n1,2,17\n");
}

TEST_CASE("binned replicates run and control error on a short null run") {
    Settings s = small(Shape::Null, 2000, 8);
    s.method = Method::Binned;
    const auto res = simulate(s);
    std::size_t rejected = 0;
    for (const auto& t : res.n_f) rejected += t.has_value();
    CHECK(rejected <= 3);
}

TEST_CASE("binned stream output has one row per bin at each checkpoint") {
    Settings s = small(Shape::Null, 400, 1);
    s.method = Method::Binned;
    s.bins = 4;
    s.checkpoint_stride = 100;
    std::stringstream dump;
    dump_replicate_stream(s, 0, dump);
    CsvStream stream(dump);
    std::ostringstream out;
    run_stream(stream, stream.kind(), stream.dim(), s, out);
    CHECK(out.str().rfind(kBinsHeader, 0) == 0);
    // snapshots at t = 100, 200, 300, 400; the first one predates the frozen edges
    CHECK(count_lines(out.str()) == 1 + 4 * 4);
}

TEST_CASE("confidence sequence over a stream") {
    Settings s = small(Shape::Null, 3000, 1);
    s.checkpoint_stride = 1000;
    s.grid_points = 21;
    std::stringstream dump;
    dump_replicate_stream(s, 0, dump);
    CsvStream stream(dump);
    std::ostringstream out;
    const auto sum = run_cs(stream, stream.kind(), stream.dim(), s, out);
    CHECK(sum.t_consumed == 3000);
    CHECK(count_lines(out.str()) == 4);
    CHECK(sum.survivors.mask.size() == 21);
    CHECK(sum.survivors.mask[10]);
    const auto j = sum.to_json(s, StreamKind::Cmf);
    CHECK(j["n_survivors"] == sum.survivors.count);
}

TEST_CASE("settings JSON round trip and errors") {
    Settings s;
    s.test.alpha = 0.05;
    s.regressor.kind = RegressorKind::Ridge;
    s.dgp = Shape::Bump;
    s.delta = 0.1;
    s.horizon = 777;
    const auto j = settings_to_json(s);
    const Settings back = settings_from_json(j);
    CHECK(back.test.alpha == 0.05);
    CHECK(back.regressor.kind == RegressorKind::Ridge);
    CHECK(back.dgp == Shape::Bump);
    CHECK(back.delta == 0.1);
    CHECK(back.horizon == 777);
    CHECK(settings_to_json(back) == j);

    CHECK_THROWS_AS(settings_from_json(nlohmann::json{{"alpah", 0.1}}), Error);
    try {
        settings_from_json(nlohmann::json{{"alpha", "high"}});
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
        CHECK(e.detail() == "alpha");
    }
    CHECK_THROWS_AS(settings_from_json(nlohmann::json{{"t0", -3}}), Error);
    CHECK_THROWS_AS(settings_from_json(nlohmann::json::array()), Error);
}

TEST_CASE("oracle nuisances need a known conditional-mean DGP") {
    Settings s;
    s.regressor.kind = RegressorKind::Oracle;
    CHECK_THROWS_AS(make_nuisances(s, StreamKind::Cmf, 10, 1), Error);
    const ShapeSpec spec = default_shape_spec(Shape::Sine);
    const Nuisances n = make_nuisances(s, StreamKind::Cmf, 10, 1, &spec);
    const std::vector<double> x(10, 0.3);
    CHECK(n.tau_hat().predict(x) == doctest::Approx(dgp1_mean(spec, x)));
    const double m = dgp1_mean(spec, x);
    CHECK(n.v_hat().predict(x) == doctest::Approx(m * (1 - m) / 6));
}

TEST_CASE("treatment-effect nuisances") {
    const Nuisances n = make_nuisances(Settings{}, StreamKind::Cate, 3, 1);
    CHECK(n.kind() == StreamKind::Cate);
    CHECK(n.tau_hat().lo() == -1.0);
    CHECK(n.tau_hat().hi() == 1.0);
    CHECK(n.g1()->lo() == 0.0);
}
