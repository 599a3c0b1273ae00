#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace phaselink {

/**
 * Single-step phase unwrap: the increment between consecutive wrapped phases,
 * folded back into [-pi, +pi] by one +-2*pi correction. Valid whenever the
 * true per-sample increment magnitude stays below pi, which the acquisition
 * grid guarantees for beat deviations up to half the intermediate rate.
 */
inline double unwrap_increment(double prev_wrapped, double curr_wrapped)
{
    double d = curr_wrapped - prev_wrapped;
    if (d > std::numbers::pi)
        d -= 2.0 * std::numbers::pi;
    else if (d < -std::numbers::pi)
        d += 2.0 * std::numbers::pi;
    return d;
}

// Wraps an arbitrary phase into (-pi, +pi].
inline double wrap_phase(double phase)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = phase - two_pi * std::floor(phase / two_pi + 0.5);
    if (w <= -std::numbers::pi)
        w += two_pi;
    return w;
}

/**
 * Phase-increment record at one of the two reduced rates. valid_from marks the
 * first index past the filter settling transient; increments before it are
 * carried for alignment bookkeeping but excluded from statistics.
 */
struct PhaseIncrementStream {
    std::vector<double> increments; // radians per sample at `rate`
    std::vector<double> amplitudes; // volts
    double rate = 0.0;              // Hz
    std::int64_t valid_from = 0;
};

// Beat frequency deviation for one increment: delta_nu = dphi * rate / (2*pi).
inline double increment_to_frequency(double increment, double rate)
{
    return increment * rate / (2.0 * std::numbers::pi);
}

std::vector<double> increments_to_frequency(const std::vector<double>& increments, double rate);

} // namespace phaselink
