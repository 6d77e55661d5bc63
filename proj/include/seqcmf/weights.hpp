#pragma once

#include <cstdint>

namespace seqcmf {

/// eps_t = c0 * t^(-gamma): the floor on weight magnitudes.
struct EpsilonSchedule {
    double c0 = 0.1;
    double gamma = 0.24;
};

double epsilon_at(const EpsilonSchedule& sched, std::uint64_t t);

/// (tau_hat(x) - f(x)) / v_hat(x). Throws InvalidInput if v_hat_x <= 0.
double raw_weight(double tau_hat_x, double f_x, double v_hat_x);

/// sgn(w) * max(eps, |w|) with sgn(0) = +1, so |result| >= eps always.
inline double threshold_weight(double w_tilde, double eps) noexcept {
    const double mag = w_tilde < 0.0 ? -w_tilde : w_tilde;
    const double kept = mag > eps ? mag : eps;
    return w_tilde < 0.0 ? -kept : kept;
}

} // namespace seqcmf
