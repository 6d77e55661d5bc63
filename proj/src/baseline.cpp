#include "seqcmf/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqcmf/boundary.hpp"
#include "seqcmf/pseudo.hpp"

namespace seqcmf {

FunctionBinning::FunctionBinning(Fn fn, std::size_t bins) : fn_(std::move(fn)), bins_(bins) {
    if (!fn_ || bins_ < 1) throw Error(ErrorKind::InvalidInput, "binning needs a function and b >= 1");
}

std::size_t FunctionBinning::assign(std::span<const double> x) const {
    const std::size_t b = fn_(x);
    if (b >= bins_) throw Error(ErrorKind::OutOfRange, "bin index");
    return b;
}

NormQuantileBinning::NormQuantileBinning(std::size_t bins, std::size_t warmup, double center)
    : bins_(bins), warmup_(warmup), center_(center) {
    if (bins_ < 1) throw Error(ErrorKind::InvalidInput, "b must be >= 1");
    if (bins_ == 1 || warmup_ == 0) freeze();
}

double NormQuantileBinning::norm(std::span<const double> x) const {
    double s = 0.0;
    for (double v : x) s += (v - center_) * (v - center_);
    return std::sqrt(s);
}

void NormQuantileBinning::observe(std::span<const double> x) {
    if (frozen_) return;
    seen_.push_back(norm(x));
    if (seen_.size() >= warmup_) freeze();
}

void NormQuantileBinning::freeze() {
    if (frozen_) return;
    frozen_ = true;
    edges_.clear();
    if (seen_.empty() || bins_ == 1) return;
    std::sort(seen_.begin(), seen_.end());
    const std::size_t n = seen_.size();
    for (std::size_t k = 1; k < bins_; ++k) {
        // lower empirical quantile at level k / b
        std::size_t idx = (k * n) / bins_;
        if (idx >= n) idx = n - 1;
        edges_.push_back(seen_[idx]);
    }
    seen_.clear();
    seen_.shrink_to_fit();
}

std::size_t NormQuantileBinning::assign(std::span<const double> x) const {
    const double v = norm(x);
    return static_cast<std::size_t>(std::upper_bound(edges_.begin(), edges_.end(), v) - edges_.begin());
}

double BinState::sample_variance() const noexcept {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double m = sum / nd;
    const double v = (sum_sq - nd * m * m) / (nd - 1.0);
    return v > 0.0 ? v : 0.0;
}

// ---------------------------------------------------------------------------

BinnedTest::BinnedTest(TestConfig cfg, std::unique_ptr<Binning> binning, std::vector<double> null_per_bin,
                       std::unique_ptr<SequentialRegressor> g1, std::unique_ptr<SequentialRegressor> g0)
    : cfg_(std::move(cfg)), binning_(std::move(binning)), null_(std::move(null_per_bin)), g1_(std::move(g1)),
      g0_(std::move(g0)) {
    if (!binning_) throw Error(ErrorKind::InvalidInput, "missing binning");
    const std::size_t b = binning_->bins();
    if (null_.size() == 1) null_.assign(b, null_.front());
    if (null_.size() != b) throw Error(ErrorKind::InvalidInput, "need one null value per bin");
    if (static_cast<bool>(g1_) != static_cast<bool>(g0_))
        throw Error(ErrorKind::InvalidInput, "outcome models come in pairs");
    bins_.resize(b);
    burn_in_ = std::max<std::size_t>(2, cfg_.t0() / b);
}

double BinnedTest::half_width(std::size_t bin) const {
    const BinState& s = bins_.at(bin);
    if (s.n == 0) return std::numeric_limits<double>::infinity();
    return mixture_half_width(s.n, s.sample_variance(), 0.5 * per_bin_level(), cfg_.rho());
}

BinRecord BinnedTest::add_to_bin(std::size_t bin, double phi) {
    BinState& s = bins_[bin];
    ++s.n;
    s.sum += phi;
    s.sum_sq += phi * phi;
    const double hw = half_width(bin);
    const double m = s.mean();
    if (!s.rejected_at && s.n >= burn_in_ && std::abs(m - null_[bin]) > hw) {
        s.rejected_at = t_;
        if (!rejected_at_) rejected_at_ = t_;
    }
    return {t_, bin, s.n, m, hw, s.rejected_at.has_value()};
}

std::vector<BinRecord> BinnedTest::flush() {
    std::vector<BinRecord> rows;
    rows.reserve(pending_.size());
    for (const auto& [x, phi] : pending_) rows.push_back(add_to_bin(binning_->assign(x), phi));
    pending_.clear();
    return rows;
}

std::vector<BinRecord> BinnedTest::step_phi(std::span<const double> x, double phi) {
    ++t_;
    if (binning_->ready()) return {add_to_bin(binning_->assign(x), phi)};
    binning_->observe(x);
    pending_.emplace_back(std::vector<double>(x.begin(), x.end()), phi);
    if (binning_->ready()) return flush();
    return {};
}

std::vector<BinRecord> BinnedTest::step(const Observation& obs) {
    validate(obs);
    const auto x = context_of(obs);
    if (const auto* cmf = std::get_if<ObservationCmf>(&obs)) {
        if (g1_) throw Error(ErrorKind::StreamKindMismatch, "binned test was built for a treatment-effect stream");
        return step_phi(x, phi_cmf(*cmf));
    }
    if (!g1_) throw Error(ErrorKind::StreamKindMismatch, "binned test was built for a conditional-mean stream");
    const auto& cate = std::get<ObservationCate>(obs);
    const double phi = phi_cate(cate, g1_->predict(x), g0_->predict(x));
    (cate.a == 1 ? g1_ : g0_)->update(x, cate.y);
    return step_phi(x, phi);
}

std::vector<BinRecord> BinnedTest::finish() {
    if (pending_.empty()) return {};
    binning_->freeze();
    return flush();
}

Decision BinnedTest::decision() const {
    return rejected_at_ ? Decision::rejected_at(*rejected_at_) : Decision::proceed();
}

} // namespace seqcmf
