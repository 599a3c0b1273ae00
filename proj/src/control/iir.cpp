#include "phaselink/control/iir.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phaselink {

OnePoleLowpass::OnePoleLowpass(double cutoff_hz, double rate_hz)
{
    if (!(cutoff_hz > 0.0) || !(rate_hz > 0.0))
        throw std::invalid_argument("cutoff and rate must be positive");
    if (cutoff_hz >= rate_hz / 2.0)
        throw std::invalid_argument("cutoff must lie below the Nyquist rate");
    alpha_ = 1.0 - std::exp(-2.0 * std::numbers::pi * cutoff_hz / rate_hz);
}

} // namespace phaselink
