#include "phaselink/dsp/pipeline.hpp"

#include <numbers>
#include <stdexcept>

namespace phaselink {

DemodPipeline::DemodPipeline(const DemodConfig& config)
    : config_(config),
      bank_(build_demod_bank(design_lowpass_hamming(config.demod_taps(), config.demod_cutoff_hz(), config.sample_rate_hz),
                             config)),
      demod_(config, bank_),
      decimator_(config)
{
    intermediate_.rate = config.intermediate_rate_hz;
    // The first settled increment is the one between two settled phases, so
    // the stream becomes trustworthy one sample after the demodulator does.
    intermediate_.valid_from = demod_.settled_from() + 1;
    output_.rate = config.output_rate_hz;

    const std::int64_t window = config.decim_taps() - 1;
    const std::int64_t ratio = config.output_decimation();
    const std::int64_t upstream = intermediate_.valid_from + window;
    output_.valid_from = std::max<std::int64_t>(decimator_.settled_from(), (upstream + ratio - 1) / ratio);
}

void DemodPipeline::push(std::span<const double> raw)
{
    iq_scratch_.clear();
    demod_.process(raw, iq_scratch_);
    raw_consumed_ += static_cast<std::int64_t>(raw.size());

    for (const IQSample& s : iq_scratch_) {
        PhaseAmplitudeSample pa = extract_amplitude_phase(s);
        double increment;
        if (pa.carrier_lost) {
            ++carrier_lost_;
            increment = 0.0; // hold phase, report no motion
        } else {
            increment = unwrap_increment(prev_phase_, pa.wrapped_phase);
            prev_phase_ = pa.wrapped_phase;
        }
        intermediate_.increments.push_back(increment);
        intermediate_.amplitudes.push_back(pa.amplitude);
    }

    const std::size_t total = intermediate_.increments.size();
    if (total > decimated_through_) {
        std::span<const double> inc(intermediate_.increments.data() + decimated_through_, total - decimated_through_);
        std::span<const double> amp(intermediate_.amplitudes.data() + decimated_through_, total - decimated_through_);
        decimator_.process(inc, amp, output_);
        decimated_through_ = total;
    }
}

double mean_frequency(const PhaseIncrementStream& stream)
{
    if (stream.valid_from >= static_cast<std::int64_t>(stream.increments.size()))
        throw std::invalid_argument("stream has no settled samples");
    double sum = 0.0;
    std::int64_t count = 0;
    for (std::size_t n = static_cast<std::size_t>(stream.valid_from); n < stream.increments.size(); ++n) {
        sum += stream.increments[n];
        ++count;
    }
    return (sum / static_cast<double>(count)) * stream.rate / (2.0 * std::numbers::pi);
}

} // namespace phaselink
