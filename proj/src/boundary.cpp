#include "seqcmf/boundary.hpp"

#include <cmath>

#include "seqcmf/core.hpp"

namespace seqcmf {

void BoundaryParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha");
    if (!(rho > 0.0 && std::isfinite(rho))) throw Error(ErrorKind::OutOfRange, "rho");
}

double mixture_half_width(std::uint64_t t, double vhat, double alpha, double rho) {
    if (t == 0) throw Error(ErrorKind::InvalidInput, "t must be >= 1");
    if (!(vhat >= 0.0) || !std::isfinite(vhat)) throw Error(ErrorKind::InvalidInput, "vhat must be finite and >= 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidInput, "alpha must lie in (0,1)");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::InvalidInput, "rho must be > 0");

    const double td = static_cast<double>(t);
    const double rho2 = rho * rho;
    const double scale = td * vhat * rho2 + 1.0;
    // log(1 + sqrt(scale) / (2 alpha)), split so tiny alpha does not overflow
    // the ratio before the log.
    const double log_ratio = 0.5 * std::log(scale) - std::log(2.0 * alpha);
    const double log_term = log_ratio > 0.0 ? log_ratio + std::log1p(std::exp(-log_ratio))
                                            : std::log1p(std::exp(log_ratio));
    // 2 scale / (t^2 rho^2) evaluated as a product of logs to avoid t^2 underflow
    const double log_prefactor = std::log(2.0) + std::log(scale) - 2.0 * std::log(td) - std::log(rho2);
    return std::exp(0.5 * (log_prefactor + std::log(log_term)));
}

double rho_for_target_time(std::uint64_t t_star, double alpha) {
    if (t_star == 0) throw Error(ErrorKind::InvalidInput, "t_star must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorKind::InvalidInput, "alpha must lie in (0, 0.5)");
    const double a = -2.0 * std::log(2.0 * alpha);
    return std::sqrt((a + std::log1p(a)) / static_cast<double>(t_star));
}

double lower_bound(double psi_bar, std::uint64_t t, double vhat, double alpha, double rho) {
    return psi_bar - mixture_half_width(t, vhat, alpha, rho);
}

} // namespace seqcmf
