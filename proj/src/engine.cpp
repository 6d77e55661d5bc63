#include "seqcmf/engine.hpp"

#include "seqcmf/boundary.hpp"
#include "seqcmf/pseudo.hpp"
#include "seqcmf/weights.hpp"

namespace seqcmf {

Nuisances Nuisances::cmf(std::unique_ptr<SequentialRegressor> tau_hat, ClippedVarianceRegressor v_hat) {
    if (!tau_hat) throw Error(ErrorKind::InvalidInput, "missing tau_hat regressor");
    Nuisances n;
    n.tau_hat_ = std::move(tau_hat);
    n.v_hat_ = std::make_unique<ClippedVarianceRegressor>(std::move(v_hat));
    return n;
}

Nuisances Nuisances::cate(std::unique_ptr<SequentialRegressor> tau_hat, ClippedVarianceRegressor v_hat,
                          std::unique_ptr<SequentialRegressor> g1, std::unique_ptr<SequentialRegressor> g0) {
    if (!g1 || !g0) throw Error(ErrorKind::InvalidInput, "treatment-effect streams need both outcome models");
    Nuisances n = cmf(std::move(tau_hat), std::move(v_hat));
    n.g1_ = std::move(g1);
    n.g0_ = std::move(g0);
    return n;
}

Nuisances::Predictions Nuisances::predict(const Observation& obs) const {
    if (kind_of(obs) != kind())
        throw Error(ErrorKind::StreamKindMismatch, "observation is " + to_string(kind_of(obs)) +
                                                       " but the test was built for " + to_string(kind()));
    const auto x = context_of(obs);
    Predictions p;
    p.tau_hat = tau_hat_->predict(x);
    p.v_hat = v_hat_->predict(x);
    if (g1_) {
        p.g1 = g1_->predict(x);
        p.g0 = g0_->predict(x);
    }
    return p;
}

void Nuisances::update(const Observation& obs, double phi, double squared_residual) {
    const auto x = context_of(obs);
    tau_hat_->update(x, phi);
    v_hat_->update(x, squared_residual);
    if (const auto* cate = std::get_if<ObservationCate>(&obs)) {
        (cate->a == 1 ? g1_ : g0_)->update(x, cate->y);
    }
}

double pseudo_outcome(const Observation& obs, const Nuisances::Predictions& pred) {
    if (const auto* cmf = std::get_if<ObservationCmf>(&obs)) return phi_cmf(*cmf);
    return phi_cate(std::get<ObservationCate>(obs), pred.g1, pred.g0);
}

// ---------------------------------------------------------------------------

double TestState::accumulate(double phi, double f_x, double tau_hat_x, double v_hat_x, double eps) {
    const double w = threshold_weight(raw_weight(tau_hat_x, f_x, v_hat_x), eps);
    psi_sum += w * (phi - f_x);
    const double r = phi - tau_hat_x;
    wsq_rsq_sum += w * w * r * r;
    return w;
}

StepRecord TestState::advance(const TestConfig& cfg, double phi, double weight) {
    ++t;
    const double td = static_cast<double>(t);
    StepRecord rec;
    rec.t = t;
    rec.phi = phi;
    rec.weight = weight;
    rec.psi_bar = psi_sum / td;
    rec.v_hat = wsq_rsq_sum / td;
    rec.lower_bound = lower_bound(rec.psi_bar, t, rec.v_hat, cfg.alpha(), cfg.rho());
    if (!rejected_at && t >= cfg.t0() && rec.lower_bound > 0.0) rejected_at = t;
    rec.rejected = rejected_at.has_value();
    return rec;
}

Decision decision(const TestState& state) {
    return state.rejected_at ? Decision::rejected_at(*state.rejected_at) : Decision::proceed();
}

// ---------------------------------------------------------------------------

SequentialTest::SequentialTest(TestConfig cfg, NullSpec null, Nuisances nuisances)
    : cfg_(std::move(cfg)), null_(std::move(null)), nuisances_(std::move(nuisances)) {}

StepRecord SequentialTest::step(const Observation& obs) {
    validate(obs);
    const auto pred = nuisances_.predict(obs);
    const auto x = context_of(obs);
    const double phi = pseudo_outcome(obs, pred);
    const double f_x = null_(x);
    const double eps = epsilon_at({cfg_.eps_scale(), cfg_.gamma()}, state_.t + 1);
    const double w = state_.accumulate(phi, f_x, pred.tau_hat, pred.v_hat, eps);
    const double r = phi - pred.tau_hat;
    nuisances_.update(obs, phi, r * r);
    return state_.advance(cfg_, phi, w);
}

RunResult run_to_horizon(SequentialTest& test, ObservationStream& stream, std::size_t horizon,
                         const RunOptions& opts) {
    RunResult out;
    if (opts.keep_records) out.records.reserve(horizon < (1u << 20) ? horizon : (1u << 20));
    while (out.consumed < horizon) {
        auto obs = stream.next();
        if (!obs) break;
        StepRecord rec = test.step(*obs);
        ++out.consumed;
        if (opts.keep_records) out.records.push_back(rec);
        if (opts.early_stop && test.state().rejected_at) break;
    }
    out.n_f = test.state().rejected_at;
    return out;
}

} // namespace seqcmf
