#pragma once

#include <vector>

namespace phaselink {

struct AdevPoint {
    double tau_s = 0.0;
    double adev = 0.0;
    bool valid = false; // false when the record is too short for this tau
};

/**
 * Overlapping Allan deviation of a frequency-fluctuation record (input units
 * carry through, Hz in and Hz out). Each requested tau must be an integer
 * multiple of the sample interval; taus that need more data than the record
 * holds come back flagged invalid rather than silently dropped.
 */
std::vector<AdevPoint> overlapping_adev(const std::vector<double>& freq_series, double rate,
                                        const std::vector<double>& taus);

// 1-2-5 spaced tau ladder between tau_min and tau_max inclusive-ish.
std::vector<double> decade_taus(double tau_min, double tau_max);

} // namespace phaselink
