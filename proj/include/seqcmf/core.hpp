#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace seqcmf {

enum class ErrorKind {
    OutOfRange,
    InvalidInput,
    DimensionMismatch,
    BoundViolated,
    StreamKindMismatch,
    ParseError,
};

std::string to_string(ErrorKind kind);

/// Single exception type for the library. `detail()` names the offending
/// field for OutOfRange and carries the reason for the other kinds.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// ParseError with the 1-based input line that failed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string reason);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// Observations

enum class StreamKind { Cmf, Cate };

std::string to_string(StreamKind kind);

struct ObservationCmf {
    std::vector<double> x;
    double y = 0.0;
};

/// One unit of a randomized experiment. `pi1` is the known probability of
/// assigning treatment 1 given this context; pi(x, 0) = 1 - pi1.
struct ObservationCate {
    std::vector<double> x;
    int a = 0;
    double y = 0.0;
    double pi1 = 0.5;

    double propensity(int arm) const noexcept { return arm == 1 ? pi1 : 1.0 - pi1; }
};

using Observation = std::variant<ObservationCmf, ObservationCate>;

StreamKind kind_of(const Observation& obs) noexcept;
std::span<const double> context_of(const Observation& obs) noexcept;

/// Throws InvalidInput for non-finite fields, a outside {0,1}, or pi1 outside (0,1).
void validate(const ObservationCmf& obs);
void validate(const ObservationCate& obs);
void validate(const Observation& obs);

/// Pull-based source of observations. next() returns nullopt once exhausted.
class ObservationStream {
public:
    virtual ~ObservationStream() = default;
    virtual std::optional<Observation> next() = 0;
};

/// Replays an in-memory vector.
class VectorStream final : public ObservationStream {
public:
    explicit VectorStream(std::vector<Observation> data) : data_(std::move(data)) {}
    std::optional<Observation> next() override;

private:
    std::vector<Observation> data_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Null hypotheses

/// The global null H(f): tau(x) = f(x). The declared bound B is a sanity
/// check on every evaluation, |f(x)| <= B.
class NullSpec {
public:
    using Fn = std::function<double(std::span<const double>)>;

    /// B defaults to 1, which covers constants for [0,1]-valued outcomes.
    static NullSpec constant(double c, double bound = 1.0);

    /// Piecewise-linear interpolation of `values` over sorted `knots`, read
    /// on context coordinate `feature`; flat beyond the end knots.
    static NullSpec tabulated(std::vector<double> knots, std::vector<double> values, double bound,
                              std::size_t feature = 0, std::size_t dimension = 0);

    /// Arbitrary function. dimension == 0 accepts any context length.
    static NullSpec callable(Fn fn, double bound, std::size_t dimension = 0);

    double bound() const noexcept { return bound_; }
    std::size_t dimension() const noexcept { return dimension_; }
    std::optional<double> constant_value() const noexcept { return constant_; }

    double operator()(std::span<const double> x) const;

private:
    NullSpec(Fn fn, double bound, std::size_t dimension, std::optional<double> constant);

    Fn fn_;
    double bound_;
    std::size_t dimension_;
    std::optional<double> constant_;
};

/// f(x), throwing DimensionMismatch or BoundViolated.
double eval_null(const NullSpec& spec, std::span<const double> x);

// ---------------------------------------------------------------------------
// Configuration

class TestConfig {
public:
    struct Params {
        double alpha = 0.1;
        double rho = 0.06;
        std::size_t t0 = 250;
        double eps_scale = 0.1;
        double gamma = 0.24;
        double var_floor = 0.01;
        double var_ceiling = 1.0;
        std::uint64_t seed = 0;
    };

    /// Defaults used in the synthetic experiments.
    TestConfig();
    /// Throws OutOfRange(field) on the first violated constraint.
    explicit TestConfig(const Params& p);

    double alpha() const noexcept { return p_.alpha; }
    double rho() const noexcept { return p_.rho; }
    std::size_t t0() const noexcept { return p_.t0; }
    double eps_scale() const noexcept { return p_.eps_scale; }
    double gamma() const noexcept { return p_.gamma; }
    double var_floor() const noexcept { return p_.var_floor; }
    double var_ceiling() const noexcept { return p_.var_ceiling; }
    std::uint64_t seed() const noexcept { return p_.seed; }
    const Params& params() const noexcept { return p_; }

    /// Non-fatal remarks, e.g. gamma >= 0.25 lies outside the range the
    /// validity guarantee covers.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    Params p_;
    std::vector<std::string> warnings_;
};

TestConfig validate_config(const TestConfig::Params& p);

/// Diagnostic row emitted after each observation.
struct StepRecord {
    std::size_t t = 0;
    double phi = 0.0;
    double weight = 0.0;
    double psi_bar = 0.0;
    double v_hat = 0.0;
    double lower_bound = 0.0;
    bool rejected = false;
};

} // namespace seqcmf
