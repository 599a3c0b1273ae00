#include "phaselink/model/adc.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselink {

double AdcModel::noise_sigma() const
{
    // Total effective noise for `enob` bits is FS / (2^enob * sqrt(12)); the
    // ideal quantizer already contributes FS / (2^bits * sqrt(12)).
    double target = full_scale / (std::exp2(enob) * std::sqrt(12.0));
    double quant = full_scale / (std::exp2(bits) * std::sqrt(12.0));
    double excess = target * target - quant * quant;
    return excess > 0.0 ? std::sqrt(excess) : 0.0;
}

AdcResult adc_quantize(std::span<const double> conditioned, const AdcModel& model, GaussianSource& noise)
{
    if (model.bits < 2 || model.bits > 16)
        throw std::invalid_argument("supported code widths are 2 to 16 bits");
    if (!(model.full_scale > 0.0))
        throw std::invalid_argument("full scale must be positive");
    const double lsb = model.lsb();
    const double sigma = model.noise_sigma();
    const long max_code = (1L << model.bits) - 1;

    AdcResult out;
    out.codes.reserve(conditioned.size());
    for (double v : conditioned) {
        if (sigma > 0.0)
            v += sigma * noise.next();
        long code = std::lround(v / lsb);
        if (code < 0) {
            code = 0;
            ++out.saturated;
        } else if (code > max_code) {
            code = max_code;
            ++out.saturated;
        }
        out.codes.push_back(static_cast<std::uint16_t>(code));
    }
    return out;
}

std::vector<double> codes_to_volts(std::span<const std::uint16_t> codes, const AdcModel& model)
{
    const double lsb = model.lsb();
    std::vector<double> volts;
    volts.reserve(codes.size());
    for (std::uint16_t c : codes)
        volts.push_back(static_cast<double>(c) * lsb - model.offset);
    return volts;
}

DigitizedSignal digitize(std::span<const double> bipolar_volts, const AdcModel& model)
{
    GaussianSource noise(derive_seed(model.seed, 0xadc));
    std::vector<double> conditioned;
    conditioned.reserve(bipolar_volts.size());
    for (double v : bipolar_volts)
        conditioned.push_back(v + model.offset);
    AdcResult r = adc_quantize(conditioned, model, noise);
    DigitizedSignal out;
    out.volts = codes_to_volts(r.codes, model);
    out.saturated = r.saturated;
    return out;
}

} // namespace phaselink
