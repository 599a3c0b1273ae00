#include "phaselink/sim/combine.hpp"

#include <algorithm>
#include <stdexcept>

namespace phaselink {

SelfHeterodyneResult combine_self_heterodyne(const AlignedAcquisition& acq)
{
    if (acq.scheme != LinkScheme::self_heterodyne)
        throw std::invalid_argument("acquisition was not taken in the self-heterodyne scheme");
    std::size_t n = std::min(acq.dnu1.size(), acq.dnu2.size());
    SelfHeterodyneResult res;
    res.fiber_estimate.resize(n);
    res.residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        res.fiber_estimate[i] = 0.5 * acq.dnu1[i];
        res.residual[i] = acq.dnu1[i] - acq.dnu2[i];
    }
    return res;
}

HeterodyneResult combine_heterodyne(const AlignedAcquisition& acq)
{
    if (acq.scheme != LinkScheme::heterodyne)
        throw std::invalid_argument("acquisition was not taken in the heterodyne scheme");
    std::size_t n = std::min(acq.dnu1.size(), acq.dnu2.size());
    HeterodyneResult res;
    res.fiber_estimate.resize(n);
    res.laser_estimate.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double fd = i < acq.f_drift_record.size() ? acq.f_drift_record[i] : 0.0;
        res.fiber_estimate[i] = 0.5 * (acq.dnu1[i] + acq.dnu2[i]);
        res.laser_estimate[i] = 0.5 * (acq.dnu1[i] - acq.dnu2[i] - 2.0 * fd);
    }
    return res;
}

} // namespace phaselink
