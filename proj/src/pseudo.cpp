#include "seqcmf/pseudo.hpp"

#include <cmath>

namespace seqcmf {

double phi_cate(const ObservationCate& obs, double g1, double g0) {
    if (!(obs.pi1 > 0.0 && obs.pi1 < 1.0)) throw Error(ErrorKind::InvalidInput, "pi1 must lie in (0,1)");
    if (!std::isfinite(g1) || !std::isfinite(g0)) throw Error(ErrorKind::InvalidInput, "non-finite outcome prediction");
    const double arm1 = g1 + (obs.a == 1 ? (obs.y - g1) / obs.pi1 : 0.0);
    const double arm0 = g0 + (obs.a == 0 ? (obs.y - g0) / (1.0 - obs.pi1) : 0.0);
    return arm1 - arm0;
}

} // namespace seqcmf
