#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "seqcmf/engine.hpp"

namespace seqcmf {

struct Survivors {
    /// mask[i] is true while candidate i is unrejected. The surviving set
    /// need not be contiguous.
    std::vector<bool> mask;
    /// (min, max) of the surviving candidates; empty when all are rejected.
    std::optional<std::pair<double, double>> hull;
    std::size_t count = 0;
};

/// Survivors of a grid given each candidate's test state.
Survivors survivors_of(const std::vector<double>& grid, const std::vector<TestState>& states);

/// Confidence sequence over constant nulls f = c for c on a grid. The
/// nuisance regressors do not depend on f, so one set of predictions per
/// observation serves every candidate.
class GridCs {
public:
    /// `grid` must be sorted ascending (repeats allowed) and non-empty.
    GridCs(TestConfig cfg, std::vector<double> grid, Nuisances nuisances);

    /// `points` evenly spaced values from lo to hi inclusive.
    static std::vector<double> uniform_grid(double lo, double hi, std::size_t points = 101);

    void step(const Observation& obs);
    Survivors survivors() const;

    std::size_t t() const noexcept { return t_; }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<TestState>& states() const noexcept { return states_; }
    const TestConfig& config() const noexcept { return cfg_; }

private:
    TestConfig cfg_;
    std::vector<double> grid_;
    Nuisances nuisances_;
    std::vector<TestState> states_;
    std::size_t t_ = 0;
};

inline void cs_step(GridCs& gcs, const Observation& obs) { gcs.step(obs); }
inline Survivors cs_survivors(const GridCs& gcs) { return gcs.survivors(); }

} // namespace seqcmf
