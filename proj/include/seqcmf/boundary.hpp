#pragma once

#include <cstdint>

namespace seqcmf {

struct BoundaryParams {
    double alpha = 0.1;
    double rho = 0.06;

    /// Throws OutOfRange unless alpha in (0,1) and rho > 0.
    void validate() const;
};

/// One-sided Gaussian-mixture half-width for the running mean at time t with
/// average variance `vhat`:
///
///   sqrt( 2 (t vhat rho^2 + 1) / (t^2 rho^2) * log(1 + sqrt(t vhat rho^2 + 1) / (2 alpha)) )
///
/// vhat == 0 is allowed and gives the finite limit. Throws InvalidInput on
/// t == 0 or vhat < 0.
double mixture_half_width(std::uint64_t t, double vhat, double alpha, double rho);

/// rho that makes the boundary approximately tightest at t_star:
/// sqrt((-2 log(2a) + log(-2 log(2a) + 1)) / t_star). Requires alpha < 0.5.
double rho_for_target_time(std::uint64_t t_star, double alpha);

/// psi_bar - mixture_half_width(...). Always strictly below psi_bar.
double lower_bound(double psi_bar, std::uint64_t t, double vhat, double alpha, double rho);

} // namespace seqcmf
