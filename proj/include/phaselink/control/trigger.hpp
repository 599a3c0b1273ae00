#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "phaselink/dsp/unwrap.hpp"

namespace phaselink {

/**
 * Edge condition watched on a demodulated stream while a channel is armed.
 * Detection itself is deterministic: the reported index is the first sample at
 * or past the settling boundary whose predecessor sat strictly on the other
 * side of the threshold. Timing uncertainty relative to the signal comes only
 * from where the edge lands inside the check grid.
 */
struct TriggerConfig {
    enum class Channel { amplitude, increment };
    Channel channel = Channel::amplitude;
    double threshold = 0.4; // volts or radians, by channel
    bool rising = true;
    double check_rate_hz = 200.0e3;
};

// First sample index satisfying the edge condition, searching from
// max(stream.valid_from, 1); empty when no edge is present.
std::optional<std::int64_t> detect_trigger(const PhaseIncrementStream& stream, const TriggerConfig& config);

// Same scan on a bare series starting at `from`.
std::optional<std::int64_t> detect_edge(std::span<const double> series, double threshold, bool rising,
                                        std::int64_t from);

} // namespace phaselink
