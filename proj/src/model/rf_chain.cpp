#include "phaselink/model/rf_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselink {

DownconvertedCarrier mix_downconvert(double rf_carrier_hz, const RfChain& chain)
{
    if (!(rf_carrier_hz > 0.0) || !(chain.lo_hz > 0.0))
        throw std::invalid_argument("carrier and LO must be positive");
    DownconvertedCarrier out;
    out.carrier_hz = std::abs(rf_carrier_hz - chain.lo_hz);
    out.sideband_sign = rf_carrier_hz >= chain.lo_hz ? 1 : -1;
    if (out.carrier_hz == 0.0) {
        out.degenerate = true;
        return out;
    }
    if (out.carrier_hz > chain.lowpass_hz)
        throw std::invalid_argument("mixed image falls outside the anti-alias passband");
    return out;
}

CarrierSignal mix_downconvert(const CarrierSignal& rf, const RfChain& chain)
{
    DownconvertedCarrier mapped = mix_downconvert(rf.carrier_hz, chain);
    CarrierSignal out;
    out.carrier_hz = mapped.carrier_hz;
    out.rate = rf.rate;
    out.fluctuations.reserve(rf.fluctuations.size());
    for (double f : rf.fluctuations)
        out.fluctuations.push_back(mapped.sideband_sign * f);
    return out;
}

} // namespace phaselink
