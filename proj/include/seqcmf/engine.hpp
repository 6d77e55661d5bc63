#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "seqcmf/core.hpp"
#include "seqcmf/regress.hpp"

namespace seqcmf {

/// The nuisance regressors of one test: tau_hat and v_hat always, plus the
/// outcome models g(., 1) and g(., 0) for treatment-effect streams.
class Nuisances {
public:
    static Nuisances cmf(std::unique_ptr<SequentialRegressor> tau_hat, ClippedVarianceRegressor v_hat);
    static Nuisances cate(std::unique_ptr<SequentialRegressor> tau_hat, ClippedVarianceRegressor v_hat,
                          std::unique_ptr<SequentialRegressor> g1, std::unique_ptr<SequentialRegressor> g0);

    StreamKind kind() const noexcept { return g1_ ? StreamKind::Cate : StreamKind::Cmf; }

    const SequentialRegressor& tau_hat() const noexcept { return *tau_hat_; }
    const ClippedVarianceRegressor& v_hat() const noexcept { return *v_hat_; }
    const SequentialRegressor* g1() const noexcept { return g1_.get(); }
    const SequentialRegressor* g0() const noexcept { return g0_.get(); }

    struct Predictions {
        double tau_hat = 0.0;
        double v_hat = 0.0;
        double g1 = 0.0;
        double g0 = 0.0;
    };

    /// Reads every prediction needed for `obs`. Throws StreamKindMismatch.
    Predictions predict(const Observation& obs) const;

    /// Feeds observation `obs` to the regressors: tau_hat on (x, phi), the
    /// variance model on (x, r^2), and the observed arm's g on (x, y).
    void update(const Observation& obs, double phi, double squared_residual);

private:
    Nuisances() = default;

    std::unique_ptr<SequentialRegressor> tau_hat_;
    std::unique_ptr<ClippedVarianceRegressor> v_hat_;
    std::unique_ptr<SequentialRegressor> g1_;
    std::unique_ptr<SequentialRegressor> g0_;
};

/// phi for `obs` given predictions read before the observation.
double pseudo_outcome(const Observation& obs, const Nuisances::Predictions& pred);

/// Running sums of one test.
struct TestState {
    std::size_t t = 0;
    double psi_sum = 0.0;
    double wsq_rsq_sum = 0.0;
    std::optional<std::size_t> rejected_at;

    /// Adds observation t+1 to the sums and returns its weight
    /// sgn(w~) max(eps, |w~|), w~ = (tau_hat - f) / v_hat.
    double accumulate(double phi, double f_x, double tau_hat_x, double v_hat_x, double eps);

    /// Advances t and evaluates the lower bound; records the first t >= t0
    /// with L_t > 0 as the rejection time.
    StepRecord advance(const TestConfig& cfg, double phi, double weight);
};

class Decision {
public:
    static Decision proceed() { return Decision(std::nullopt); }
    static Decision rejected_at(std::size_t t) { return Decision(t); }

    bool rejected() const noexcept { return at_.has_value(); }
    /// Rejection time; only meaningful when rejected().
    std::size_t at() const noexcept { return at_.value_or(0); }

    bool operator==(const Decision&) const = default;

private:
    explicit Decision(std::optional<std::size_t> at) : at_(at) {}
    std::optional<std::size_t> at_;
};

Decision decision(const TestState& state);

/// One sequential test of H(f) over a stream.
class SequentialTest {
public:
    SequentialTest(TestConfig cfg, NullSpec null, Nuisances nuisances);

    /// Consumes one observation. Predictions are read before any regressor
    /// is updated with it.
    StepRecord step(const Observation& obs);

    Decision decision() const { return seqcmf::decision(state_); }
    const TestState& state() const noexcept { return state_; }
    const TestConfig& config() const noexcept { return cfg_; }
    const Nuisances& nuisances() const noexcept { return nuisances_; }
    StreamKind kind() const noexcept { return nuisances_.kind(); }

private:
    TestConfig cfg_;
    NullSpec null_;
    Nuisances nuisances_;
    TestState state_;
};

struct RunOptions {
    bool early_stop = false;
    bool keep_records = true;
};

struct RunResult {
    std::vector<StepRecord> records;
    std::optional<std::size_t> n_f;
    std::size_t consumed = 0;
};

RunResult run_to_horizon(SequentialTest& test, ObservationStream& stream, std::size_t horizon,
                         const RunOptions& opts = {});

} // namespace seqcmf
