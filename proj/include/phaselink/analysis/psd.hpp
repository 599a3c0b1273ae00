#pragma once

#include <cstddef>
#include <vector>

namespace phaselink {

struct PsdEstimate {
    std::vector<double> freq_hz;
    std::vector<double> psd; // one-sided, input-units^2 per Hz
    double resolution_hz = 0.0;
    std::size_t segments = 0;
};

/**
 * Welch spectral estimate: Hann-windowed segments, 50 percent overlap by
 * default, one-sided output. Calibration is power-preserving: integrating the
 * estimate across the band returns the series variance, so a pure tone of
 * amplitude a integrates to a^2/2 and unit-variance white noise at rate fs
 * sits at 2/fs. Segment length may be any value from 2 to the series length.
 */
PsdEstimate welch_psd(const std::vector<double>& series, double rate, std::size_t segment, double overlap = 0.5);

// Mean estimate level between f_lo and f_hi inclusive.
double band_average(const PsdEstimate& est, double f_lo, double f_hi);

// Integral of the estimate over its full band (variance recovered).
double psd_integral(const PsdEstimate& est);

} // namespace phaselink
