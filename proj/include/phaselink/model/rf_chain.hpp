#pragma once

#include <vector>

namespace phaselink {

/**
 * Analog front end between photodiode and sampler: one mixing stage against a
 * fixed local oscillator followed by an anti-alias lowpass. Only frequencies
 * matter here; amplitudes are carried unchanged.
 */
struct RfChain {
    double lo_hz = 41.0e6;
    double lowpass_hz = 1.9e6;
};

struct DownconvertedCarrier {
    double carrier_hz = 0.0;  // |rf - lo|
    int sideband_sign = 1;    // -1 when the mix inverts the fluctuation sign
    bool degenerate = false;  // rf landed exactly on the LO
};

/**
 * Maps an RF beat to its sampled image. The output carrier is |rf - lo|;
 * fluctuation sign flips when the RF sits below the LO. Throws when the image
 * falls outside the anti-alias passband; flags (not throws) the degenerate
 * zero-frequency case.
 */
DownconvertedCarrier mix_downconvert(double rf_carrier_hz, const RfChain& chain);

struct CarrierSignal {
    double carrier_hz = 0.0;
    std::vector<double> fluctuations; // Hz
    double rate = 0.0;
};

CarrierSignal mix_downconvert(const CarrierSignal& rf, const RfChain& chain);

} // namespace phaselink
