#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "seqcmf/core.hpp"
#include "seqcmf/engine.hpp"
#include "seqcmf/regress.hpp"

namespace seqcmf {

/// Partition of the context space into b bins.
class Binning {
public:
    virtual ~Binning() = default;
    virtual std::size_t bins() const = 0;
    /// False while the binning is still learning its edges.
    virtual bool ready() const = 0;
    /// Feeds a context seen before ready(). No-op afterwards.
    virtual void observe(std::span<const double> x) = 0;
    /// Forces the binning ready with whatever it has seen.
    virtual void freeze() = 0;
    virtual std::size_t assign(std::span<const double> x) const = 0;
};

/// Fixed user-supplied assignment.
class FunctionBinning final : public Binning {
public:
    using Fn = std::function<std::size_t(std::span<const double>)>;
    FunctionBinning(Fn fn, std::size_t bins);

    std::size_t bins() const override { return bins_; }
    bool ready() const override { return true; }
    void observe(std::span<const double>) override {}
    void freeze() override {}
    std::size_t assign(std::span<const double> x) const override;

private:
    Fn fn_;
    std::size_t bins_;
};

/// Quantile bins of ||x - center * 1||_2. Edges are the empirical k/b
/// quantiles of the first `warmup` contexts and never move afterwards.
class NormQuantileBinning final : public Binning {
public:
    explicit NormQuantileBinning(std::size_t bins, std::size_t warmup = 200, double center = 0.5);

    std::size_t bins() const override { return bins_; }
    bool ready() const override { return frozen_; }
    void observe(std::span<const double> x) override;
    void freeze() override;
    std::size_t assign(std::span<const double> x) const override;

    const std::vector<double>& edges() const noexcept { return edges_; }

private:
    double norm(std::span<const double> x) const;

    std::size_t bins_;
    std::size_t warmup_;
    double center_;
    std::vector<double> seen_;
    std::vector<double> edges_;
    bool frozen_ = false;
};

struct BinState {
    std::size_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::optional<std::size_t> rejected_at;

    double mean() const noexcept { return n ? sum / static_cast<double>(n) : 0.0; }
    /// Unbiased sample variance, 0 for fewer than two points.
    double sample_variance() const noexcept;
};

/// Per-bin diagnostic row.
struct BinRecord {
    std::size_t t = 0;
    std::size_t bin = 0;
    std::size_t n = 0;
    double mean = 0.0;
    double half_width = 0.0;
    bool rejected = false;
};

/// Bonferroni combination of per-bin two-sided confidence sequences on phi.
/// Each bin gets level alpha / b, spent as (alpha / b) / 2 per side of the
/// mixture boundary; the test rejects when any bin's interval excludes
/// that bin's null value.
class BinnedTest {
public:
    /// `null_per_bin` has one value per bin, or a single value for all bins.
    /// Treatment-effect streams need the outcome models g1, g0.
    BinnedTest(TestConfig cfg, std::unique_ptr<Binning> binning, std::vector<double> null_per_bin,
               std::unique_ptr<SequentialRegressor> g1 = nullptr, std::unique_ptr<SequentialRegressor> g0 = nullptr);

    /// Consumes one observation. Returns the rows of bins that changed; empty
    /// while the binning is still warming up (those points are replayed into
    /// their bins once the edges freeze).
    std::vector<BinRecord> step(const Observation& obs);

    /// Adds an already computed pseudo-outcome for context x.
    std::vector<BinRecord> step_phi(std::span<const double> x, double phi);

    /// Freezes the binning if needed and replays buffered points.
    std::vector<BinRecord> finish();

    Decision decision() const;

    std::size_t t() const noexcept { return t_; }
    double per_bin_level() const noexcept { return cfg_.alpha() / static_cast<double>(bins_.size()); }
    std::size_t burn_in() const noexcept { return burn_in_; }
    const std::vector<BinState>& bin_states() const noexcept { return bins_; }
    double half_width(std::size_t bin) const;

private:
    BinRecord add_to_bin(std::size_t bin, double phi);
    std::vector<BinRecord> flush();

    TestConfig cfg_;
    std::unique_ptr<Binning> binning_;
    std::vector<double> null_;
    std::unique_ptr<SequentialRegressor> g1_;
    std::unique_ptr<SequentialRegressor> g0_;
    std::vector<BinState> bins_;
    std::size_t burn_in_;
    std::size_t t_ = 0;
    std::optional<std::size_t> rejected_at_;
    std::vector<std::pair<std::vector<double>, double>> pending_;
};

} // namespace seqcmf
