#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "seqcmf/mlp.hpp"

namespace seqcmf {

/// Online regressor used for the nuisance functions. Predictions are pure
/// reads; every value returned by predict() is clamped to [lo, hi].
///
/// Callers own the predictability contract: for observation t, read all
/// predictions first and only then call update() with observation t.
class SequentialRegressor {
public:
    SequentialRegressor(double lo, double hi);
    virtual ~SequentialRegressor() = default;

    SequentialRegressor(const SequentialRegressor&) = delete;
    SequentialRegressor& operator=(const SequentialRegressor&) = delete;

    double predict(std::span<const double> x) const;
    void update(std::span<const double> x, double target) { do_update(x, target); }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

protected:
    virtual double do_predict(std::span<const double> x) const = 0;
    virtual void do_update(std::span<const double> x, double target) = 0;

private:
    double lo_;
    double hi_;
};

// ---------------------------------------------------------------------------
// k nearest neighbours

/// Flat store of (x, target) pairs of a fixed dimension.
class KnnHistory {
public:
    explicit KnnHistory(std::size_t dim = 0) : dim_(dim) {}

    void push(std::span<const double> x, double target);
    std::size_t size() const noexcept { return targets_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }
    double target(std::size_t i) const { return targets_[i]; }

private:
    std::size_t dim_;
    std::vector<double> points_;
    std::vector<double> targets_;
};

/// Inverse-L2-distance weighted mean of the min(k, n) nearest targets.
/// Empty history gives `default_value`; when the query coincides with stored
/// points, the plain mean of every zero-distance target is returned. Ties in
/// distance are broken by insertion order.
double knn_predict(const KnnHistory& history, std::span<const double> query, std::size_t k, double default_value);

class KnnRegressor final : public SequentialRegressor {
public:
    KnnRegressor(std::size_t dim, std::size_t k, double default_value, double lo, double hi);

    const KnnHistory& history() const noexcept { return history_; }

private:
    double do_predict(std::span<const double> x) const override;
    void do_update(std::span<const double> x, double target) override;

    std::size_t k_;
    double default_;
    KnnHistory history_;
};

// ---------------------------------------------------------------------------
// Linear model fitted by per-observation SGD with an L2 penalty

struct RidgeState {
    /// One coefficient per feature followed by the intercept.
    std::vector<double> beta;
};

inline constexpr double kRidgeGradientClip = 1e6;

/// beta - lr * ((beta . xt - target) xt + l2 beta), xt = (x, 1); each
/// gradient component is clipped to +-kRidgeGradientClip.
RidgeState ridge_sgd_update(const RidgeState& state, std::span<const double> x, double target, double lr, double l2);
double ridge_predict(const RidgeState& state, std::span<const double> x);

class RidgeSgdRegressor final : public SequentialRegressor {
public:
    /// Starts from zero slopes and intercept = default_value.
    RidgeSgdRegressor(std::size_t dim, double lr, double l2, double default_value, double lo, double hi);

    const RidgeState& state() const noexcept { return state_; }

private:
    double do_predict(std::span<const double> x) const override;
    void do_update(std::span<const double> x, double target) override;

    double lr_;
    double l2_;
    RidgeState state_;
};

// ---------------------------------------------------------------------------

/// Sigmoid-output network rescaled to (lo, hi); trained one sample at a time
/// with Adam on the squared loss of the rescaled target.
class MlpRegressor final : public SequentialRegressor {
public:
    MlpRegressor(std::size_t dim, const std::vector<std::size_t>& hidden, double adam_lr, std::uint64_t seed,
                 double lo, double hi);

    const MlpParams& params() const noexcept { return params_; }

private:
    double do_predict(std::span<const double> x) const override;
    void do_update(std::span<const double> x, double target) override;

    MlpParams params_;
    AdamState adam_;
};

/// Known function; update is a no-op.
class OracleRegressor final : public SequentialRegressor {
public:
    using Fn = std::function<double(std::span<const double>)>;
    OracleRegressor(Fn fn, double lo, double hi);

private:
    double do_predict(std::span<const double> x) const override { return fn_(x); }
    void do_update(std::span<const double>, double) override {}

    Fn fn_;
};

std::unique_ptr<SequentialRegressor> oracle_regressor(OracleRegressor::Fn fn, double lo, double hi);

class ConstantRegressor final : public SequentialRegressor {
public:
    ConstantRegressor(double value, double lo, double hi) : SequentialRegressor(lo, hi), value_(value) {}

private:
    double do_predict(std::span<const double>) const override { return value_; }
    void do_update(std::span<const double>, double) override {}

    double value_;
};

// ---------------------------------------------------------------------------

/// v_hat(x) = max(min(inner(x), ceiling), floor). The inner regressor is
/// trained on squared residuals.
class ClippedVarianceRegressor {
public:
    ClippedVarianceRegressor(std::unique_ptr<SequentialRegressor> inner, double floor, double ceiling);

    double predict(std::span<const double> x) const;
    void update(std::span<const double> x, double squared_residual) { inner_->update(x, squared_residual); }

    double floor() const noexcept { return floor_; }
    double ceiling() const noexcept { return ceiling_; }
    const SequentialRegressor& inner() const noexcept { return *inner_; }

private:
    std::unique_ptr<SequentialRegressor> inner_;
    double floor_;
    double ceiling_;
};

double clipped_variance_predict(const ClippedVarianceRegressor& cvr, std::span<const double> x);

// ---------------------------------------------------------------------------
// Construction from configuration

enum class RegressorKind { Knn, Ridge, Mlp, Oracle, Constant };

RegressorKind parse_regressor_kind(const std::string& name);
std::string to_string(RegressorKind kind);

struct RegressorOptions {
    RegressorKind kind = RegressorKind::Knn;
    std::size_t knn_k = 50;
    double ridge_lr = 0.01;
    double ridge_l2 = 1e-6;
    std::vector<std::size_t> mlp_hidden{64, 64, 64};
    double mlp_adam_lr = 1e-3;
};

/// Output clamp plus the prediction used before any data arrives.
struct OutputRange {
    double lo = 0.0;
    double hi = 1.0;
    double cold_start = 0.5;
};

/// Builds a learning regressor. Oracle is rejected here: it needs a function
/// and is constructed with oracle_regressor(). Constant predicts cold_start.
std::unique_ptr<SequentialRegressor> make_regressor(const RegressorOptions& opts, std::size_t dim,
                                                    const OutputRange& range, std::uint64_t seed);

} // namespace seqcmf
