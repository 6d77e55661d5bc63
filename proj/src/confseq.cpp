#include "seqcmf/confseq.hpp"

#include <algorithm>

#include "seqcmf/weights.hpp"

namespace seqcmf {

GridCs::GridCs(TestConfig cfg, std::vector<double> grid, Nuisances nuisances)
    : cfg_(std::move(cfg)), grid_(std::move(grid)), nuisances_(std::move(nuisances)), states_(grid_.size()) {
    if (grid_.empty()) throw Error(ErrorKind::InvalidInput, "confidence grid is empty");
    if (!std::is_sorted(grid_.begin(), grid_.end()))
        throw Error(ErrorKind::InvalidInput, "confidence grid must be sorted ascending");
}

std::vector<double> GridCs::uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 1 || !(lo <= hi)) throw Error(ErrorKind::InvalidInput, "grid needs lo <= hi and >= 1 point");
    if (points == 1) return {lo};
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

void GridCs::step(const Observation& obs) {
    validate(obs);
    const auto pred = nuisances_.predict(obs);
    const double phi = pseudo_outcome(obs, pred);
    const double eps = epsilon_at({cfg_.eps_scale(), cfg_.gamma()}, t_ + 1);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        TestState& s = states_[i];
        const double w = s.accumulate(phi, grid_[i], pred.tau_hat, pred.v_hat, eps);
        s.advance(cfg_, phi, w);
    }
    const double r = phi - pred.tau_hat;
    nuisances_.update(obs, phi, r * r);
    ++t_;
}

Survivors survivors_of(const std::vector<double>& grid, const std::vector<TestState>& states) {
    if (grid.size() != states.size()) throw Error(ErrorKind::DimensionMismatch, "one state per grid point");
    Survivors out;
    out.mask.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool alive = !states[i].rejected_at.has_value();
        out.mask[i] = alive;
        if (!alive) continue;
        ++out.count;
        if (!out.hull) out.hull = std::make_pair(grid[i], grid[i]);
        else out.hull->second = grid[i];
    }
    return out;
}

Survivors GridCs::survivors() const { return survivors_of(grid_, states_); }

} // namespace seqcmf
