#include "phaselink/dsp/unwrap.hpp"

namespace phaselink {

std::vector<double> increments_to_frequency(const std::vector<double>& increments, double rate)
{
    std::vector<double> out(increments.size());
    for (std::size_t n = 0; n < increments.size(); ++n)
        out[n] = increment_to_frequency(increments[n], rate);
    return out;
}

} // namespace phaselink
