#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqcmf/rng.hpp"

namespace seqcmf {

/// Fully connected network: ReLU hidden layers, one sigmoid output unit.
/// Parameters live in one flat vector, layer by layer, each layer storing its
/// row-major weight matrix (out x in) followed by its bias vector.
struct MlpParams {
    std::vector<std::size_t> widths; // input, hidden..., 1
    std::vector<double> theta;

    std::size_t num_layers() const noexcept { return widths.size() - 1; }
    std::size_t weight_offset(std::size_t layer) const;
    std::size_t bias_offset(std::size_t layer) const;
};

/// All-zero parameters for the given layer widths (last width must be 1).
MlpParams mlp_zeros(std::vector<std::size_t> widths);

/// He-scaled normal weights, zero biases.
MlpParams mlp_init(std::vector<std::size_t> widths, Rng& rng);

/// Network output in (0, 1).
double mlp_forward(const MlpParams& params, std::span<const double> x);

/// Loss 0.5 (out - target)^2 and its gradient with respect to theta.
double mlp_loss_gradient(const MlpParams& params, std::span<const double> x, double target, std::vector<double>& grad);

struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t step = 0;
    std::vector<double> m;
    std::vector<double> v;
};

AdamState adam_for(const MlpParams& params, double lr);

/// One backpropagated Adam step on a single (x, target) pair.
void mlp_update(MlpParams& params, AdamState& adam, std::span<const double> x, double target);

} // namespace seqcmf
