#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/model/rng.hpp"

namespace phaselink {

/**
 * Mid-tread sampler model. Codes run 0 .. 2^bits - 1 across [0, full_scale]
 * volts (LSB = full_scale / (2^bits - 1)); inputs are expected already
 * gain/offset conditioned, with `offset` the conditioning that centered a
 * bipolar signal, used when converting codes back to signed volts. Gaussian
 * noise is added before quantization, sized so the total of added plus ideal
 * quantization noise matches the effective number of bits; enob == bits adds
 * none. Out-of-range samples clip to the rails and are counted.
 */
struct AdcModel {
    int bits = 14;
    double enob = 12.2;
    double full_scale = 2.5;   // volts
    double gain = 15.0;        // front-end voltage gain, informational
    double offset = 1.25;      // volts added during conditioning
    double rate_hz = 4.0e6;
    std::uint64_t seed = 1;

    double lsb() const { return full_scale / static_cast<double>((1 << bits) - 1); }
    double noise_sigma() const; // volts of pre-quantizer Gaussian noise
};

struct AdcResult {
    std::vector<std::uint16_t> codes;
    std::int64_t saturated = 0;
};

// Quantizes conditioned volts (already offset into [0, full_scale]).
AdcResult adc_quantize(std::span<const double> conditioned, const AdcModel& model, GaussianSource& noise);

// Codes back to signed volts, with the conditioning offset removed.
std::vector<double> codes_to_volts(std::span<const std::uint16_t> codes, const AdcModel& model);

/**
 * Round trip through the converter: condition a bipolar signal by adding the
 * model offset, quantize with noise, and return signed volts. This is the
 * digitized record a processing channel sees.
 */
struct DigitizedSignal {
    std::vector<double> volts;
    std::int64_t saturated = 0;
};

DigitizedSignal digitize(std::span<const double> bipolar_volts, const AdcModel& model);

} // namespace phaselink
