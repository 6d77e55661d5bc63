#include "seqcmf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace seqcmf {

// ---------------------------------------------------------------------------
// Text formats

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string stream_header(StreamKind kind, std::size_t dim) {
    std::string h;
    for (std::size_t j = 1; j <= dim; ++j) h += "x" + std::to_string(j) + ",";
    h += kind == StreamKind::Cmf ? "y" : "a,y,pi1";
    return h;
}

void write_observation(std::ostream& os, const Observation& obs) {
    for (double v : context_of(obs)) os << format_real(v) << ',';
    if (const auto* cmf = std::get_if<ObservationCmf>(&obs)) {
        os << format_real(cmf->y) << '\n';
        return;
    }
    const auto& c = std::get<ObservationCate>(obs);
    os << c.a << ',' << format_real(c.y) << ',' << format_real(c.pi1) << '\n';
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view field, std::size_t line, const char* what) {
    field = trim(field);
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw ParseError(line, std::string("cannot parse ") + what + " '" + std::string(field) + "'");
    if (!std::isfinite(v)) throw ParseError(line, std::string("non-finite ") + what);
    return v;
}

} // namespace

CsvStream::CsvStream(std::istream& in) : in_(in) {
    std::string header;
    if (!std::getline(in_, header)) throw ParseError(1, "missing header");
    auto cols = split_fields(trim(header));
    for (auto& c : cols) c = trim(c);
    std::size_t tail = 0;
    if (cols.size() >= 4 && cols[cols.size() - 3] == "a" && cols[cols.size() - 2] == "y" && cols.back() == "pi1") {
        kind_ = StreamKind::Cate;
        tail = 3;
    } else if (cols.size() >= 2 && cols.back() == "y") {
        kind_ = StreamKind::Cmf;
        tail = 1;
    } else {
        throw ParseError(1, "header must be x1,...,xd,y or x1,...,xd,a,y,pi1");
    }
    dim_ = cols.size() - tail;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (cols[j] != "x" + std::to_string(j + 1))
            throw ParseError(1, "expected column x" + std::to_string(j + 1) + ", found '" + std::string(cols[j]) + "'");
    }
}

std::optional<Observation> CsvStream::next() {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        const std::size_t expected = dim_ + (kind_ == StreamKind::Cmf ? 1 : 3);
        if (fields.size() != expected)
            throw ParseError(line_, "expected " + std::to_string(expected) + " fields, found " +
                                        std::to_string(fields.size()));
        std::vector<double> x(dim_);
        for (std::size_t j = 0; j < dim_; ++j) x[j] = parse_real(fields[j], line_, "context");
        if (kind_ == StreamKind::Cmf) return ObservationCmf{std::move(x), parse_real(fields[dim_], line_, "y")};

        ObservationCate obs;
        obs.x = std::move(x);
        const double a = parse_real(fields[dim_], line_, "a");
        if (a != 0.0 && a != 1.0) throw ParseError(line_, "treatment a must be 0 or 1");
        obs.a = static_cast<int>(a);
        obs.y = parse_real(fields[dim_ + 1], line_, "y");
        obs.pi1 = parse_real(fields[dim_ + 2], line_, "pi1");
        if (!(obs.pi1 > 0.0 && obs.pi1 < 1.0))
            throw ParseError(line_, "pi1 = " + format_real(obs.pi1) + " outside (0,1)");
        return obs;
    }
    return std::nullopt;
}

void write_record(std::ostream& os, const StepRecord& r) {
    os << r.t << ',' << format_real(r.phi) << ',' << format_real(r.weight) << ',' << format_real(r.psi_bar) << ','
       << format_real(r.v_hat) << ',' << format_real(r.lower_bound) << ',' << (r.rejected ? 1 : 0) << '\n';
}

void write_bin_record(std::ostream& os, const BinRecord& r) {
    os << r.t << ',' << r.bin << ',' << r.n << ',' << format_real(r.mean) << ',';
    if (std::isfinite(r.half_width)) os << format_real(r.half_width);
    os << ',' << (r.rejected ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// CDF

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(k) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (p + z2 / (2.0 * nd)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = k == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

CdfTable ecdf(const std::vector<std::optional<std::size_t>>& times, const std::vector<std::size_t>& grid) {
    if (!std::is_sorted(grid.begin(), grid.end())) throw Error(ErrorKind::InvalidInput, "cdf grid must be ascending");
    std::vector<std::size_t> finite;
    for (const auto& t : times)
        if (t) finite.push_back(*t);
    std::sort(finite.begin(), finite.end());
    CdfTable table;
    table.reserve(grid.size());
    const std::size_t n = times.size();
    for (std::size_t t : grid) {
        const auto k = static_cast<std::size_t>(std::upper_bound(finite.begin(), finite.end(), t) - finite.begin());
        const auto [lo, hi] = wilson_interval(k, n);
        const double frac = n ? static_cast<double>(k) / static_cast<double>(n) : 0.0;
        table.push_back({t, frac, lo, hi});
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& r = table[i];
        if (!(r.wilson_lo <= r.fraction_rejected && r.fraction_rejected <= r.wilson_hi))
            throw Error(ErrorKind::InvalidInput, "cdf bounds do not bracket the fraction");
        if (i > 0 && r.fraction_rejected < table[i - 1].fraction_rejected)
            throw Error(ErrorKind::InvalidInput, "cdf is not monotone");
    }
    return table;
}

void write_cdf(std::ostream& os, const CdfTable& table) {
    os << kCdfHeader << '\n';
    for (const auto& r : table)
        os << r.t << ',' << format_real(r.fraction_rejected) << ',' << format_real(r.wilson_lo) << ','
           << format_real(r.wilson_hi) << '\n';
}

// ---------------------------------------------------------------------------
// Settings

Method parse_method(const std::string& name) {
    if (name == "gaavi") return Method::Gaavi;
    if (name == "binned") return Method::Binned;
    throw Error(ErrorKind::InvalidInput, "unknown method '" + name + "'");
}

std::string to_string(Method m) { return m == Method::Gaavi ? "gaavi" : "binned"; }

ShapeSpec Settings::shape_spec() const {
    ShapeSpec spec = default_shape_spec(dgp);
    if (delta) spec.delta = *delta;
    if (concentration) spec.concentration = *concentration;
    spec.dimension = dim;
    spec.validate();
    return spec;
}

double Settings::null_for(StreamKind kind) const {
    if (null_value) return *null_value;
    return kind == StreamKind::Cmf ? 0.5 : 0.0;
}

namespace {

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::OutOfRange, key);
    }
}

std::size_t get_count(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw Error(ErrorKind::OutOfRange, key);
    return v.get<std::size_t>();
}

} // namespace

Settings settings_from_json(const nlohmann::json& j, Settings s) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "alpha") s.test.alpha = get_as<double>(v, key);
        else if (key == "rho") s.test.rho = get_as<double>(v, key);
        else if (key == "t0") s.test.t0 = get_count(v, key);
        else if (key == "eps_scale") s.test.eps_scale = get_as<double>(v, key);
        else if (key == "gamma") s.test.gamma = get_as<double>(v, key);
        else if (key == "var_floor") s.test.var_floor = get_as<double>(v, key);
        else if (key == "var_ceiling") s.test.var_ceiling = get_as<double>(v, key);
        else if (key == "seed") s.test.seed = get_as<std::uint64_t>(v, key);
        else if (key == "regressor") s.regressor.kind = parse_regressor_kind(get_as<std::string>(v, key));
        else if (key == "knn.k") s.regressor.knn_k = get_count(v, key);
        else if (key == "ridge.lr") s.regressor.ridge_lr = get_as<double>(v, key);
        else if (key == "ridge.l2") s.regressor.ridge_l2 = get_as<double>(v, key);
        else if (key == "mlp.hidden") s.regressor.mlp_hidden = get_as<std::vector<std::size_t>>(v, key);
        else if (key == "mlp.adam_lr") s.regressor.mlp_adam_lr = get_as<double>(v, key);
        else if (key == "method") s.method = parse_method(get_as<std::string>(v, key));
        else if (key == "dgp") s.dgp = parse_shape(get_as<std::string>(v, key));
        else if (key == "delta") s.delta = get_as<double>(v, key);
        else if (key == "conc") s.concentration = get_as<double>(v, key);
        else if (key == "dim") s.dim = get_count(v, key);
        else if (key == "horizon") s.horizon = get_count(v, key);
        else if (key == "replicates") s.replicates = get_count(v, key);
        else if (key == "checkpoint_stride") s.checkpoint_stride = get_count(v, key);
        else if (key == "grid_stride") s.grid_stride = get_count(v, key);
        else if (key == "bins") s.bins = get_count(v, key);
        else if (key == "threads") s.threads = get_count(v, key);
        else if (key == "early_stop") s.early_stop = get_as<bool>(v, key);
        else if (key == "null") s.null_value = get_as<double>(v, key);
        else if (key == "null_bound") s.null_bound = get_as<double>(v, key);
        else if (key == "outcome_lo") s.outcome_lo = get_as<double>(v, key);
        else if (key == "outcome_hi") s.outcome_hi = get_as<double>(v, key);
        else if (key == "grid_lo") s.grid_lo = get_as<double>(v, key);
        else if (key == "grid_hi") s.grid_hi = get_as<double>(v, key);
        else if (key == "grid_points") s.grid_points = get_count(v, key);
        else throw Error(ErrorKind::InvalidInput, "unknown config key '" + key + "'");
    }
    return s;
}

nlohmann::json settings_to_json(const Settings& s) {
    nlohmann::json j;
    j["alpha"] = s.test.alpha;
    j["rho"] = s.test.rho;
    j["t0"] = s.test.t0;
    j["eps_scale"] = s.test.eps_scale;
    j["gamma"] = s.test.gamma;
    j["var_floor"] = s.test.var_floor;
    j["var_ceiling"] = s.test.var_ceiling;
    j["seed"] = s.test.seed;
    j["regressor"] = to_string(s.regressor.kind);
    j["knn.k"] = s.regressor.knn_k;
    j["ridge.lr"] = s.regressor.ridge_lr;
    j["ridge.l2"] = s.regressor.ridge_l2;
    j["mlp.hidden"] = s.regressor.mlp_hidden;
    j["mlp.adam_lr"] = s.regressor.mlp_adam_lr;
    j["method"] = to_string(s.method);
    j["dgp"] = to_string(s.dgp);
    if (s.delta) j["delta"] = *s.delta;
    if (s.concentration) j["conc"] = *s.concentration;
    j["dim"] = s.dim;
    j["horizon"] = s.horizon;
    j["replicates"] = s.replicates;
    j["checkpoint_stride"] = s.checkpoint_stride;
    j["grid_stride"] = s.grid_stride;
    j["bins"] = s.bins;
    j["early_stop"] = s.early_stop;
    if (s.null_value) j["null"] = *s.null_value;
    j["null_bound"] = s.null_bound;
    j["outcome_lo"] = s.outcome_lo;
    j["outcome_hi"] = s.outcome_hi;
    if (s.grid_lo) j["grid_lo"] = *s.grid_lo;
    if (s.grid_hi) j["grid_hi"] = *s.grid_hi;
    j["grid_points"] = s.grid_points;
    return j;
}

// ---------------------------------------------------------------------------
// Factories

Nuisances make_nuisances(const Settings& s, StreamKind kind, std::size_t dim, std::uint64_t seed,
                         const ShapeSpec* oracle_dgp) {
    if (!(s.outcome_hi > s.outcome_lo)) throw Error(ErrorKind::OutOfRange, "outcome_hi");
    const double vmax = s.test.var_ceiling;
    const OutputRange var_range{0.0, vmax, vmax};

    if (s.regressor.kind == RegressorKind::Oracle) {
        if (!oracle_dgp || kind != StreamKind::Cmf)
            throw Error(ErrorKind::InvalidInput, "oracle regressors need a known synthetic conditional-mean DGP");
        const ShapeSpec spec = *oracle_dgp;
        auto tau = oracle_regressor([spec](std::span<const double> x) { return dgp1_mean(spec, x); }, s.outcome_lo,
                                    s.outcome_hi);
        auto var = oracle_regressor(
            [spec](std::span<const double> x) {
                const double m = dgp1_mean(spec, x);
                return m * (1.0 - m) / (spec.concentration + 1.0);
            },
            0.0, vmax);
        return Nuisances::cmf(std::move(tau), ClippedVarianceRegressor(std::move(var), s.test.var_floor, vmax));
    }

    const double mid = 0.5 * (s.outcome_lo + s.outcome_hi);
    auto v_inner = make_regressor(s.regressor, dim, var_range, mix_seed(seed, 2));
    ClippedVarianceRegressor v_hat(std::move(v_inner), s.test.var_floor, vmax);
    if (kind == StreamKind::Cmf) {
        const OutputRange tau_range{s.outcome_lo, s.outcome_hi, mid};
        return Nuisances::cmf(make_regressor(s.regressor, dim, tau_range, mix_seed(seed, 1)), std::move(v_hat));
    }
    const double width = s.outcome_hi - s.outcome_lo;
    const OutputRange tau_range{-width, width, 0.0};
    const OutputRange g_range{s.outcome_lo, s.outcome_hi, mid};
    return Nuisances::cate(make_regressor(s.regressor, dim, tau_range, mix_seed(seed, 1)), std::move(v_hat),
                           make_regressor(s.regressor, dim, g_range, mix_seed(seed, 3)),
                           make_regressor(s.regressor, dim, g_range, mix_seed(seed, 4)));
}

namespace {

std::unique_ptr<BinnedTest> make_binned(const Settings& s, StreamKind kind, std::size_t dim, std::uint64_t seed) {
    std::unique_ptr<SequentialRegressor> g1, g0;
    if (kind == StreamKind::Cate) {
        if (s.regressor.kind == RegressorKind::Oracle)
            throw Error(ErrorKind::InvalidInput, "oracle outcome models are not available for the binned method");
        const OutputRange g_range{s.outcome_lo, s.outcome_hi, 0.5 * (s.outcome_lo + s.outcome_hi)};
        g1 = make_regressor(s.regressor, dim, g_range, mix_seed(seed, 3));
        g0 = make_regressor(s.regressor, dim, g_range, mix_seed(seed, 4));
    }
    return std::make_unique<BinnedTest>(s.config(), std::make_unique<NormQuantileBinning>(s.bins),
                                        std::vector<double>{s.null_for(kind)}, std::move(g1), std::move(g0));
}

std::uint64_t stream_seed(std::uint64_t replicate_seed) { return mix_seed(replicate_seed, 0); }

} // namespace

// ---------------------------------------------------------------------------
// Monte Carlo

std::uint64_t replicate_seed(std::uint64_t base, std::size_t r) { return mix_seed(base, r); }

std::optional<std::size_t> run_replicate(const Settings& s, std::size_t r) {
    const ShapeSpec spec = s.shape_spec();
    const std::uint64_t seed = replicate_seed(s.test.seed, r);
    Dgp1Stream stream(spec, stream_seed(seed));
    if (s.method == Method::Binned) {
        auto test = make_binned(s, StreamKind::Cmf, spec.dimension, seed);
        for (std::size_t t = 0; t < s.horizon && !test->decision().rejected(); ++t) test->step(*stream.next());
        test->finish();
        const auto d = test->decision();
        return d.rejected() ? std::optional<std::size_t>(d.at()) : std::nullopt;
    }
    SequentialTest test(s.config(), NullSpec::constant(s.null_for(StreamKind::Cmf), s.null_bound),
                        make_nuisances(s, StreamKind::Cmf, spec.dimension, seed, &spec));
    RunOptions opts;
    opts.early_stop = true;
    opts.keep_records = false;
    return run_to_horizon(test, stream, s.horizon, opts).n_f;
}

std::vector<std::size_t> cdf_grid(std::size_t horizon, std::size_t stride) {
    if (stride == 0) throw Error(ErrorKind::OutOfRange, "grid_stride");
    std::vector<std::size_t> g;
    for (std::size_t t = stride; t < horizon; t += stride) g.push_back(t);
    g.push_back(horizon);
    return g;
}

SimulationResult simulate(const Settings& s) {
    if (s.replicates < 1) throw Error(ErrorKind::OutOfRange, "replicates");
    if (s.horizon < s.test.t0) throw Error(ErrorKind::OutOfRange, "horizon");
    (void)s.config();
    (void)s.shape_spec();

    SimulationResult out;
    out.n_f.resize(s.replicates);
    out.seeds.resize(s.replicates);
    for (std::size_t r = 0; r < s.replicates; ++r) out.seeds[r] = replicate_seed(s.test.seed, r);

    std::size_t workers = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, s.replicates);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t id) {
        try {
            for (std::size_t r = next++; r < s.replicates; r = next++) out.n_f[r] = run_replicate(s, r);
        } catch (...) {
            errors[id] = std::current_exception();
            next = s.replicates;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work, i);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    out.cdf = ecdf(out.n_f, cdf_grid(s.horizon, s.grid_stride));
    return out;
}

void write_times(std::ostream& os, const SimulationResult& r) {
    os << "replicate,seed,n_f\n";
    for (std::size_t i = 0; i < r.n_f.size(); ++i) {
        os << i << ',' << r.seeds[i] << ',';
        if (r.n_f[i]) os << *r.n_f[i];
        os << '\n';
    }
}

void dump_replicate_stream(const Settings& s, std::size_t r, std::ostream& os) {
    const ShapeSpec spec = s.shape_spec();
    Dgp1Stream stream(spec, stream_seed(replicate_seed(s.test.seed, r)));
    os << stream_header(StreamKind::Cmf, spec.dimension) << '\n';
    for (std::size_t t = 0; t < s.horizon; ++t) write_observation(os, *stream.next());
}

// ---------------------------------------------------------------------------
// Single stream

nlohmann::json StreamSummary::to_json(const Settings& s, StreamKind kind) const {
    nlohmann::json j;
    j["n_f"] = n_f ? nlohmann::json(*n_f) : nlohmann::json(nullptr);
    j["t_consumed"] = t_consumed;
    j["stream_kind"] = to_string(kind);
    j["config"] = settings_to_json(s);
    return j;
}

nlohmann::json CsSummary::to_json(const Settings& s, StreamKind kind) const {
    nlohmann::json j;
    j["t_consumed"] = t_consumed;
    j["stream_kind"] = to_string(kind);
    j["n_survivors"] = survivors.count;
    if (survivors.hull) j["hull"] = {survivors.hull->first, survivors.hull->second};
    else j["hull"] = nullptr;
    j["mask"] = survivors.mask;
    j["config"] = settings_to_json(s);
    return j;
}

StreamSummary run_stream(ObservationStream& stream, StreamKind kind, std::size_t dim, const Settings& s,
                         std::ostream& out) {
    if (s.checkpoint_stride == 0) throw Error(ErrorKind::OutOfRange, "checkpoint_stride");
    StreamSummary sum;
    const std::uint64_t seed = s.test.seed;

    if (s.method == Method::Binned) {
        auto test = make_binned(s, kind, dim, seed);
        out << kBinsHeader << '\n';
        auto snapshot = [&] {
            for (std::size_t b = 0; b < test->bin_states().size(); ++b) {
                const auto& st = test->bin_states()[b];
                write_bin_record(out, {test->t(), b, st.n, st.mean(), test->half_width(b), st.rejected_at.has_value()});
            }
        };
        bool written = false;
        while (sum.t_consumed < s.horizon) {
            auto obs = stream.next();
            if (!obs) break;
            if (kind_of(*obs) != kind) throw Error(ErrorKind::StreamKindMismatch, "mixed stream kinds");
            test->step(*obs);
            ++sum.t_consumed;
            written = test->t() % s.checkpoint_stride == 0;
            if (written) snapshot();
            if (s.early_stop && test->decision().rejected()) break;
        }
        if (!test->finish().empty() || !written) snapshot();
        if (test->decision().rejected()) sum.n_f = test->decision().at();
        return sum;
    }

    SequentialTest test(s.config(), NullSpec::constant(s.null_for(kind), s.null_bound), make_nuisances(s, kind, dim, seed));
    out << kRecordsHeader << '\n';
    bool written = false;
    StepRecord last;
    while (sum.t_consumed < s.horizon) {
        auto obs = stream.next();
        if (!obs) break;
        last = test.step(*obs);
        ++sum.t_consumed;
        written = last.t % s.checkpoint_stride == 0;
        if (written) write_record(out, last);
        if (s.early_stop && test.state().rejected_at) break;
    }
    if (!written && sum.t_consumed > 0) write_record(out, last);
    sum.n_f = test.state().rejected_at;
    return sum;
}

CsSummary run_cs(ObservationStream& stream, StreamKind kind, std::size_t dim, const Settings& s, std::ostream& out) {
    if (s.checkpoint_stride == 0) throw Error(ErrorKind::OutOfRange, "checkpoint_stride");
    const double lo = s.grid_lo.value_or(kind == StreamKind::Cmf ? s.outcome_lo : -(s.outcome_hi - s.outcome_lo));
    const double hi = s.grid_hi.value_or(kind == StreamKind::Cmf ? s.outcome_hi : (s.outcome_hi - s.outcome_lo));
    GridCs cs(s.config(), GridCs::uniform_grid(lo, hi, s.grid_points), make_nuisances(s, kind, dim, s.test.seed));
    out << kCsHeader << '\n';
    CsSummary sum;
    auto row = [&] {
        const auto sv = cs.survivors();
        out << cs.t() << ',';
        if (sv.hull) out << format_real(sv.hull->first) << ',' << format_real(sv.hull->second);
        else out << ',';
        out << ',' << sv.count << '\n';
    };
    bool written = false;
    while (sum.t_consumed < s.horizon) {
        auto obs = stream.next();
        if (!obs) break;
        cs.step(*obs);
        ++sum.t_consumed;
        written = cs.t() % s.checkpoint_stride == 0;
        if (written) row();
    }
    if (!written && sum.t_consumed > 0) row();
    sum.survivors = cs.survivors();
    return sum;
}

} // namespace seqcmf
