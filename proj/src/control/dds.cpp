#include "phaselink/control/dds.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselink {

double DdsModel::lsb_hz() const
{
    return clock_hz / std::exp2(word_bits);
}

std::uint64_t dds_quantize(double requested_hz, const DdsModel& model)
{
    if (model.word_bits < 1 || model.word_bits > 63)
        throw std::invalid_argument("word width must lie in [1, 63] bits");
    if (!(model.clock_hz > 0.0))
        throw std::invalid_argument("clock must be positive");
    if (!(requested_hz >= 0.0) || requested_hz >= model.clock_hz / 2.0)
        throw std::invalid_argument("requested frequency must lie in [0, clock/2)");
    return static_cast<std::uint64_t>(std::llround(requested_hz / model.lsb_hz()));
}

double dds_actual_hz(std::uint64_t word, const DdsModel& model)
{
    if (word >> model.word_bits)
        throw std::invalid_argument("word exceeds the accumulator width");
    return static_cast<double>(word) * model.lsb_hz();
}

} // namespace phaselink
