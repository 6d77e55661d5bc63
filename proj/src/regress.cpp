#include "seqcmf/regress.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "seqcmf/core.hpp"

namespace seqcmf {

SequentialRegressor::SequentialRegressor(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw Error(ErrorKind::InvalidInput, "regressor clamp range must satisfy lo <= hi");
}

double SequentialRegressor::predict(std::span<const double> x) const {
    const double v = do_predict(x);
    if (std::isnan(v)) return 0.5 * (lo_ + hi_);
    return std::clamp(v, lo_, hi_);
}

// ---------------------------------------------------------------------------

void KnnHistory::push(std::span<const double> x, double target) {
    if (dim_ == 0 && targets_.empty()) dim_ = x.size();
    if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "knn history dimension");
    points_.insert(points_.end(), x.begin(), x.end());
    targets_.push_back(target);
}

double knn_predict(const KnnHistory& history, std::span<const double> query, std::size_t k, double default_value) {
    if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
    const std::size_t n = history.size();
    if (n == 0) return default_value;
    const std::size_t dim = history.dim();
    if (query.size() != dim) throw Error(ErrorKind::DimensionMismatch, "knn query dimension");

    thread_local std::vector<std::pair<double, std::size_t>> scratch;
    scratch.resize(n);
    std::size_t zero_count = 0;
    double zero_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = history.point(i);
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double diff = p[j] - query[j];
            d2 += diff * diff;
        }
        if (d2 == 0.0) {
            ++zero_count;
            zero_sum += history.target(i);
        }
        scratch[i] = {d2, i};
    }
    if (zero_count > 0) return zero_sum / static_cast<double>(zero_count);

    const std::size_t m = std::min(k, n);
    if (m < n) std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(m - 1), scratch.end());
    double wsum = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = 1.0 / std::sqrt(scratch[i].first);
        wsum += w;
        acc += w * history.target(scratch[i].second);
    }
    return acc / wsum;
}

KnnRegressor::KnnRegressor(std::size_t dim, std::size_t k, double default_value, double lo, double hi)
    : SequentialRegressor(lo, hi), k_(k), default_(default_value), history_(dim) {
    if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
}

double KnnRegressor::do_predict(std::span<const double> x) const { return knn_predict(history_, x, k_, default_); }

void KnnRegressor::do_update(std::span<const double> x, double target) { history_.push(x, target); }

// ---------------------------------------------------------------------------

double ridge_predict(const RidgeState& state, std::span<const double> x) {
    if (state.beta.size() != x.size() + 1) throw Error(ErrorKind::DimensionMismatch, "ridge input dimension");
    double s = state.beta.back();
    for (std::size_t j = 0; j < x.size(); ++j) s += state.beta[j] * x[j];
    return s;
}

RidgeState ridge_sgd_update(const RidgeState& state, std::span<const double> x, double target, double lr, double l2) {
    if (!(lr > 0.0)) throw Error(ErrorKind::InvalidInput, "ridge lr must be > 0");
    if (!(l2 >= 0.0)) throw Error(ErrorKind::InvalidInput, "ridge l2 must be >= 0");
    const double resid = ridge_predict(state, x) - target;
    RidgeState next = state;
    const std::size_t d = x.size();
    for (std::size_t j = 0; j <= d; ++j) {
        const double xj = j < d ? x[j] : 1.0;
        double g = resid * xj + l2 * state.beta[j];
        if (std::isnan(g)) g = 0.0;
        g = std::clamp(g, -kRidgeGradientClip, kRidgeGradientClip);
        next.beta[j] = state.beta[j] - lr * g;
    }
    return next;
}

RidgeSgdRegressor::RidgeSgdRegressor(std::size_t dim, double lr, double l2, double default_value, double lo,
                                     double hi)
    : SequentialRegressor(lo, hi), lr_(lr), l2_(l2) {
    if (!(lr > 0.0)) throw Error(ErrorKind::InvalidInput, "ridge lr must be > 0");
    if (!(l2 >= 0.0)) throw Error(ErrorKind::InvalidInput, "ridge l2 must be >= 0");
    state_.beta.assign(dim + 1, 0.0);
    state_.beta.back() = default_value;
}

double RidgeSgdRegressor::do_predict(std::span<const double> x) const { return ridge_predict(state_, x); }

void RidgeSgdRegressor::do_update(std::span<const double> x, double target) {
    state_ = ridge_sgd_update(state_, x, target, lr_, l2_);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> mlp_widths(std::size_t dim, const std::vector<std::size_t>& hidden) {
    std::vector<std::size_t> w;
    w.reserve(hidden.size() + 2);
    w.push_back(dim);
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(1);
    return w;
}

} // namespace

MlpRegressor::MlpRegressor(std::size_t dim, const std::vector<std::size_t>& hidden, double adam_lr,
                           std::uint64_t seed, double lo, double hi)
    : SequentialRegressor(lo, hi) {
    if (!(hi > lo)) throw Error(ErrorKind::InvalidInput, "mlp output range must have hi > lo");
    Rng rng(seed);
    params_ = mlp_init(mlp_widths(dim, hidden), rng);
    adam_ = adam_for(params_, adam_lr);
}

double MlpRegressor::do_predict(std::span<const double> x) const {
    return lo() + (hi() - lo()) * mlp_forward(params_, x);
}

void MlpRegressor::do_update(std::span<const double> x, double target) {
    const double unit = std::clamp((target - lo()) / (hi() - lo()), 0.0, 1.0);
    mlp_update(params_, adam_, x, unit);
}

// ---------------------------------------------------------------------------

OracleRegressor::OracleRegressor(Fn fn, double lo, double hi) : SequentialRegressor(lo, hi), fn_(std::move(fn)) {
    if (!fn_) throw Error(ErrorKind::InvalidInput, "empty oracle function");
}

std::unique_ptr<SequentialRegressor> oracle_regressor(OracleRegressor::Fn fn, double lo, double hi) {
    return std::make_unique<OracleRegressor>(std::move(fn), lo, hi);
}

ClippedVarianceRegressor::ClippedVarianceRegressor(std::unique_ptr<SequentialRegressor> inner, double floor,
                                                   double ceiling)
    : inner_(std::move(inner)), floor_(floor), ceiling_(ceiling) {
    if (!inner_) throw Error(ErrorKind::InvalidInput, "missing inner variance regressor");
    if (!(floor > 0.0)) throw Error(ErrorKind::OutOfRange, "var_floor");
    if (!(ceiling > floor)) throw Error(ErrorKind::OutOfRange, "var_ceiling");
}

double ClippedVarianceRegressor::predict(std::span<const double> x) const {
    return std::max(std::min(inner_->predict(x), ceiling_), floor_);
}

double clipped_variance_predict(const ClippedVarianceRegressor& cvr, std::span<const double> x) {
    return cvr.predict(x);
}

// ---------------------------------------------------------------------------

RegressorKind parse_regressor_kind(const std::string& name) {
    if (name == "knn") return RegressorKind::Knn;
    if (name == "ridge") return RegressorKind::Ridge;
    if (name == "mlp") return RegressorKind::Mlp;
    if (name == "oracle") return RegressorKind::Oracle;
    if (name == "constant") return RegressorKind::Constant;
    throw Error(ErrorKind::InvalidInput, "unknown regressor '" + name + "'");
}

std::string to_string(RegressorKind kind) {
    switch (kind) {
    case RegressorKind::Knn: return "knn";
    case RegressorKind::Ridge: return "ridge";
    case RegressorKind::Mlp: return "mlp";
    case RegressorKind::Oracle: return "oracle";
    case RegressorKind::Constant: return "constant";
    }
    return "knn";
}

std::unique_ptr<SequentialRegressor> make_regressor(const RegressorOptions& opts, std::size_t dim,
                                                    const OutputRange& range, std::uint64_t seed) {
    switch (opts.kind) {
    case RegressorKind::Knn:
        return std::make_unique<KnnRegressor>(dim, opts.knn_k, range.cold_start, range.lo, range.hi);
    case RegressorKind::Ridge:
        return std::make_unique<RidgeSgdRegressor>(dim, opts.ridge_lr, opts.ridge_l2, range.cold_start, range.lo,
                                                   range.hi);
    case RegressorKind::Mlp:
        return std::make_unique<MlpRegressor>(dim, opts.mlp_hidden, opts.mlp_adam_lr, seed, range.lo, range.hi);
    case RegressorKind::Constant:
        return std::make_unique<ConstantRegressor>(range.cold_start, range.lo, range.hi);
    case RegressorKind::Oracle:
        break;
    }
    throw Error(ErrorKind::InvalidInput, "oracle regressors need a known function");
}

} // namespace seqcmf
