#include "seqcmf/mlp.hpp"

#include <cmath>

#include "seqcmf/core.hpp"

namespace seqcmf {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_widths(const std::vector<std::size_t>& widths) {
    if (widths.size() < 2) throw Error(ErrorKind::InvalidInput, "mlp needs at least input and output widths");
    if (widths.back() != 1) throw Error(ErrorKind::InvalidInput, "mlp output width must be 1");
    for (std::size_t w : widths)
        if (w == 0) throw Error(ErrorKind::InvalidInput, "mlp layer width must be >= 1");
}

std::size_t param_count(const std::vector<std::size_t>& widths) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) n += widths[l + 1] * widths[l] + widths[l + 1];
    return n;
}

// Pre-activations and activations of every layer.
struct Trace {
    std::vector<std::vector<double>> z;
    std::vector<std::vector<double>> a; // a[0] is the input
};

Trace forward_trace(const MlpParams& p, std::span<const double> x) {
    if (x.size() != p.widths.front())
        throw Error(ErrorKind::DimensionMismatch,
                    "mlp expects " + std::to_string(p.widths.front()) + " inputs, got " + std::to_string(x.size()));
    const std::size_t layers = p.num_layers();
    Trace tr;
    tr.z.resize(layers);
    tr.a.resize(layers + 1);
    tr.a[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in = p.widths[l];
        const std::size_t out = p.widths[l + 1];
        const double* w = p.theta.data() + p.weight_offset(l);
        const double* b = p.theta.data() + p.bias_offset(l);
        auto& z = tr.z[l];
        z.assign(out, 0.0);
        const auto& prev = tr.a[l];
        for (std::size_t o = 0; o < out; ++o) {
            double s = b[o];
            const double* row = w + o * in;
            for (std::size_t i = 0; i < in; ++i) s += row[i] * prev[i];
            z[o] = s;
        }
        auto& a = tr.a[l + 1];
        a.resize(out);
        const bool last = l + 1 == layers;
        for (std::size_t o = 0; o < out; ++o) a[o] = last ? sigmoid(z[o]) : (z[o] > 0.0 ? z[o] : 0.0);
    }
    return tr;
}

} // namespace

std::size_t MlpParams::weight_offset(std::size_t layer) const {
    std::size_t off = 0;
    for (std::size_t l = 0; l < layer; ++l) off += widths[l + 1] * widths[l] + widths[l + 1];
    return off;
}

std::size_t MlpParams::bias_offset(std::size_t layer) const {
    return weight_offset(layer) + widths[layer + 1] * widths[layer];
}

MlpParams mlp_zeros(std::vector<std::size_t> widths) {
    check_widths(widths);
    MlpParams p;
    p.theta.assign(param_count(widths), 0.0);
    p.widths = std::move(widths);
    return p;
}

MlpParams mlp_init(std::vector<std::size_t> widths, Rng& rng) {
    MlpParams p = mlp_zeros(std::move(widths));
    for (std::size_t l = 0; l < p.num_layers(); ++l) {
        const double scale = std::sqrt(2.0 / static_cast<double>(p.widths[l]));
        const std::size_t off = p.weight_offset(l);
        const std::size_t n = p.widths[l + 1] * p.widths[l];
        for (std::size_t i = 0; i < n; ++i) p.theta[off + i] = scale * rng.normal();
    }
    return p;
}

double mlp_forward(const MlpParams& params, std::span<const double> x) {
    return forward_trace(params, x).a.back()[0];
}

double mlp_loss_gradient(const MlpParams& p, std::span<const double> x, double target, std::vector<double>& grad) {
    const Trace tr = forward_trace(p, x);
    const std::size_t layers = p.num_layers();
    grad.assign(p.theta.size(), 0.0);

    const double out = tr.a.back()[0];
    const double err = out - target;
    std::vector<double> delta{err * out * (1.0 - out)};

    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t in = p.widths[l];
        const std::size_t outw = p.widths[l + 1];
        const double* w = p.theta.data() + p.weight_offset(l);
        double* gw = grad.data() + p.weight_offset(l);
        double* gb = grad.data() + p.bias_offset(l);
        const auto& prev = tr.a[l];
        for (std::size_t o = 0; o < outw; ++o) {
            gb[o] = delta[o];
            for (std::size_t i = 0; i < in; ++i) gw[o * in + i] = delta[o] * prev[i];
        }
        if (l == 0) break;
        std::vector<double> next(in, 0.0);
        for (std::size_t o = 0; o < outw; ++o)
            for (std::size_t i = 0; i < in; ++i) next[i] += w[o * in + i] * delta[o];
        const auto& zprev = tr.z[l - 1];
        for (std::size_t i = 0; i < in; ++i)
            if (!(zprev[i] > 0.0)) next[i] = 0.0;
        delta = std::move(next);
    }
    return 0.5 * err * err;
}

AdamState adam_for(const MlpParams& params, double lr) {
    AdamState s;
    s.lr = lr;
    s.m.assign(params.theta.size(), 0.0);
    s.v.assign(params.theta.size(), 0.0);
    return s;
}

void mlp_update(MlpParams& params, AdamState& adam, std::span<const double> x, double target) {
    if (adam.m.size() != params.theta.size()) {
        adam.m.assign(params.theta.size(), 0.0);
        adam.v.assign(params.theta.size(), 0.0);
        adam.step = 0;
    }
    std::vector<double> grad;
    mlp_loss_gradient(params, x, target, grad);
    ++adam.step;
    const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
    const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));
    for (std::size_t i = 0; i < grad.size(); ++i) {
        adam.m[i] = adam.beta1 * adam.m[i] + (1.0 - adam.beta1) * grad[i];
        adam.v[i] = adam.beta2 * adam.v[i] + (1.0 - adam.beta2) * grad[i] * grad[i];
        const double mhat = adam.m[i] / c1;
        const double vhat = adam.v[i] / c2;
        params.theta[i] -= adam.lr * mhat / (std::sqrt(vhat) + adam.eps);
    }
}

} // namespace seqcmf
