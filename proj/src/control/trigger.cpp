#include "phaselink/control/trigger.hpp"

#include <algorithm>

namespace phaselink {

std::optional<std::int64_t> detect_edge(std::span<const double> series, double threshold, bool rising,
                                        std::int64_t from)
{
    std::int64_t start = std::max<std::int64_t>(from, 1);
    for (std::int64_t i = start; i < static_cast<std::int64_t>(series.size()); ++i) {
        double prev = series[static_cast<std::size_t>(i - 1)];
        double curr = series[static_cast<std::size_t>(i)];
        if (rising ? (prev < threshold && curr >= threshold) : (prev > threshold && curr <= threshold))
            return i;
    }
    return std::nullopt;
}

std::optional<std::int64_t> detect_trigger(const PhaseIncrementStream& stream, const TriggerConfig& config)
{
    const std::vector<double>& channel =
        config.channel == TriggerConfig::Channel::amplitude ? stream.amplitudes : stream.increments;
    return detect_edge(channel, config.threshold, config.rising, stream.valid_from);
}

} // namespace phaselink
