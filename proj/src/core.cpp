#include "seqcmf/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seqcmf {

std::string to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::StreamKindMismatch: return "StreamKindMismatch";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(to_string(kind) + "(" + detail + ")"), kind_(kind), detail_(std::move(detail)) {}

ParseError::ParseError(std::size_t line, std::string reason)
    : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason), line_(line) {}

std::string to_string(StreamKind kind) { return kind == StreamKind::Cmf ? "cmf" : "cate"; }

StreamKind kind_of(const Observation& obs) noexcept {
    return std::holds_alternative<ObservationCmf>(obs) ? StreamKind::Cmf : StreamKind::Cate;
}

std::span<const double> context_of(const Observation& obs) noexcept {
    return std::visit([](const auto& o) { return std::span<const double>(o.x); }, obs);
}

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

} // namespace

void validate(const ObservationCmf& obs) {
    if (obs.x.empty()) throw Error(ErrorKind::InvalidInput, "empty context");
    if (!all_finite(obs.x)) throw Error(ErrorKind::InvalidInput, "non-finite context");
    if (!std::isfinite(obs.y)) throw Error(ErrorKind::InvalidInput, "non-finite outcome");
}

void validate(const ObservationCate& obs) {
    if (obs.x.empty()) throw Error(ErrorKind::InvalidInput, "empty context");
    if (!all_finite(obs.x)) throw Error(ErrorKind::InvalidInput, "non-finite context");
    if (!std::isfinite(obs.y)) throw Error(ErrorKind::InvalidInput, "non-finite outcome");
    if (obs.a != 0 && obs.a != 1) throw Error(ErrorKind::InvalidInput, "treatment must be 0 or 1");
    if (!(obs.pi1 > 0.0 && obs.pi1 < 1.0)) throw Error(ErrorKind::InvalidInput, "pi1 must lie in (0,1)");
}

void validate(const Observation& obs) {
    std::visit([](const auto& o) { validate(o); }, obs);
}

std::optional<Observation> VectorStream::next() {
    if (pos_ >= data_.size()) return std::nullopt;
    return data_[pos_++];
}

// ---------------------------------------------------------------------------

NullSpec::NullSpec(Fn fn, double bound, std::size_t dimension, std::optional<double> constant)
    : fn_(std::move(fn)), bound_(bound), dimension_(dimension), constant_(constant) {
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw Error(ErrorKind::OutOfRange, "bound");
}

NullSpec NullSpec::constant(double c, double bound) {
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidInput, "non-finite constant null");
    return NullSpec([c](std::span<const double>) { return c; }, bound, 0, c);
}

NullSpec NullSpec::tabulated(std::vector<double> knots, std::vector<double> values, double bound,
                             std::size_t feature, std::size_t dimension) {
    if (knots.empty() || knots.size() != values.size())
        throw Error(ErrorKind::InvalidInput, "tabulated null needs matching, non-empty knots and values");
    if (!std::is_sorted(knots.begin(), knots.end()))
        throw Error(ErrorKind::InvalidInput, "tabulated knots must be sorted");
    if (dimension != 0 && feature >= dimension)
        throw Error(ErrorKind::InvalidInput, "tabulated feature index outside dimension");
    auto fn = [knots = std::move(knots), values = std::move(values), feature](std::span<const double> x) {
        if (feature >= x.size()) throw Error(ErrorKind::DimensionMismatch, "tabulated feature index");
        const double u = x[feature];
        if (u <= knots.front()) return values.front();
        if (u >= knots.back()) return values.back();
        const auto hi = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), u) - knots.begin());
        const std::size_t lo = hi - 1;
        const double span = knots[hi] - knots[lo];
        if (span <= 0.0) return values[hi];
        const double frac = (u - knots[lo]) / span;
        return values[lo] + frac * (values[hi] - values[lo]);
    };
    return NullSpec(std::move(fn), bound, dimension, std::nullopt);
}

NullSpec NullSpec::callable(Fn fn, double bound, std::size_t dimension) {
    if (!fn) throw Error(ErrorKind::InvalidInput, "empty callable null");
    return NullSpec(std::move(fn), bound, dimension, std::nullopt);
}

double NullSpec::operator()(std::span<const double> x) const {
    if (dimension_ != 0 && x.size() != dimension_) {
        std::ostringstream os;
        os << "null expects dimension " << dimension_ << ", got " << x.size();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const double v = fn_(x);
    if (!std::isfinite(v) || std::abs(v) > bound_) {
        std::ostringstream os;
        os << "|f(x)| = " << std::abs(v) << " exceeds B = " << bound_;
        throw Error(ErrorKind::BoundViolated, os.str());
    }
    return v;
}

double eval_null(const NullSpec& spec, std::span<const double> x) { return spec(x); }

// ---------------------------------------------------------------------------

TestConfig::TestConfig() : TestConfig(Params{}) {}

TestConfig::TestConfig(const Params& p) : p_(p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!(finite(p.alpha) && p.alpha > 0.0 && p.alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha");
    if (!(finite(p.rho) && p.rho > 0.0)) throw Error(ErrorKind::OutOfRange, "rho");
    if (p.t0 < 1) throw Error(ErrorKind::OutOfRange, "t0");
    if (!(finite(p.eps_scale) && p.eps_scale > 0.0)) throw Error(ErrorKind::OutOfRange, "eps_scale");
    if (!(finite(p.gamma) && p.gamma >= 0.0)) throw Error(ErrorKind::OutOfRange, "gamma");
    if (!(finite(p.var_floor) && p.var_floor > 0.0)) throw Error(ErrorKind::OutOfRange, "var_floor");
    if (!(finite(p.var_ceiling) && p.var_ceiling > p.var_floor)) throw Error(ErrorKind::OutOfRange, "var_ceiling");
    if (p.gamma >= 0.25) {
        warnings_.push_back("gamma >= 0.25 is outside the range covered by the error-control guarantee");
    }
}

TestConfig validate_config(const TestConfig::Params& p) { return TestConfig(p); }

} // namespace seqcmf
