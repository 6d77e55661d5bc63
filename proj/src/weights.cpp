#include "seqcmf/weights.hpp"

#include <cmath>

#include "seqcmf/core.hpp"

namespace seqcmf {

double epsilon_at(const EpsilonSchedule& sched, std::uint64_t t) {
    if (t == 0) throw Error(ErrorKind::InvalidInput, "t must be >= 1");
    if (sched.gamma == 0.0) return sched.c0;
    return sched.c0 * std::pow(static_cast<double>(t), -sched.gamma);
}

double raw_weight(double tau_hat_x, double f_x, double v_hat_x) {
    if (!(v_hat_x > 0.0)) throw Error(ErrorKind::InvalidInput, "variance estimate must be positive");
    return (tau_hat_x - f_x) / v_hat_x;
}

} // namespace seqcmf
