#include "phaselink/sim/board.hpp"

#include <stdexcept>

namespace phaselink {

BoardChannel::BoardChannel(const BoardConfig& config)
    : config_(config),
      hold_(static_cast<std::size_t>(config.demod.demod_decimation())),
      synth_(ToneSpec{config.beat_amplitude, config.demod.carrier_hz, 0.0}, config.demod.sample_rate_hz),
      adc_noise_(derive_seed(config.seed, 0xadcULL)),
      pipeline_(config.demod)
{
    config.demod.validate();
    if (config.beat_amplitude <= 0.0)
        throw std::invalid_argument("beat amplitude must be positive");
}

void BoardChannel::push_deviation(std::span<const double> pd_freq)
{
    const std::size_t n_raw = pd_freq.size() * hold_;
    raw_hold_.clear();
    raw_hold_.reserve(n_raw);
    for (double f : pd_freq)
        raw_hold_.insert(raw_hold_.end(), hold_, f);

    raw_volts_.clear();
    synth_.generate(raw_hold_, n_raw, raw_volts_);

    if (config_.use_adc) {
        AdcModel adc = config_.adc;
        adc.rate_hz = config_.demod.sample_rate_hz;
        std::vector<double> conditioned(raw_volts_.size());
        for (std::size_t i = 0; i < raw_volts_.size(); ++i)
            conditioned[i] = raw_volts_[i] + adc.offset;
        AdcResult res = adc_quantize(conditioned, adc, adc_noise_);
        saturated_ += res.saturated;
        std::vector<double> back = codes_to_volts(res.codes, adc);
        pipeline_.push(back);
    } else {
        pipeline_.push(raw_volts_);
    }
}

BoardRun run_board(const BoardConfig& config, std::span<const double> pd_freq)
{
    BoardChannel channel(config);
    channel.push_deviation(pd_freq);
    BoardRun run;
    run.intermediate = channel.intermediate();
    run.output = channel.output();
    run.saturated = channel.saturated_samples();
    run.carrier_lost = channel.pipeline().carrier_lost_count();
    return run;
}

} // namespace phaselink
