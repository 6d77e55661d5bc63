#pragma once

#include "seqcmf/core.hpp"

namespace seqcmf {

/// Pseudo-outcome for a conditional-mean stream: the outcome itself.
inline double phi_cmf(const ObservationCmf& obs) noexcept { return obs.y; }

/// Augmented inverse-propensity contrast
///   [g1 + 1[a=1](y - g1)/pi(x,1)] - [g0 + 1[a=0](y - g0)/pi(x,0)].
/// g1, g0 must be predictions made before this observation was seen; under
/// that condition the result is conditionally unbiased for tau(x) whatever
/// values g1, g0 take.
double phi_cate(const ObservationCate& obs, double g1, double g0);

} // namespace seqcmf
