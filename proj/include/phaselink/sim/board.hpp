#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/dsp/pipeline.hpp"
#include "phaselink/model/adc.hpp"
#include "phaselink/model/beatnote.hpp"
#include "phaselink/model/rng.hpp"

namespace phaselink {

/**
 * One acquisition channel modeled at the RF level: the photodiode beat is
 * synthesized as a voltage record at the raw rate, optionally passed through
 * the converter model, then demodulated by the standard processing chain.
 */
struct BoardConfig {
    DemodConfig demod;
    AdcModel adc;
    double beat_amplitude = 1.0; // volts peak at the sampler
    bool use_adc = true;
    std::uint64_t seed = 1;
};

class BoardChannel {
  public:
    explicit BoardChannel(const BoardConfig& config);

    /**
     * Consumes beat-frequency deviations sampled at the intermediate rate.
     * Each deviation value is held across one intermediate-rate period of raw
     * samples, so the synthesized phase is continuous and the demodulated
     * increments reproduce the input band up to the chain's own filtering.
     */
    void push_deviation(std::span<const double> pd_freq);

    const PhaseIncrementStream& intermediate() const { return pipeline_.intermediate(); }
    const PhaseIncrementStream& output() const { return pipeline_.output(); }
    const DemodPipeline& pipeline() const { return pipeline_; }
    std::int64_t saturated_samples() const { return saturated_; }

  private:
    BoardConfig config_;
    std::size_t hold_ = 0;
    BeatnoteSynthesizer synth_;
    GaussianSource adc_noise_;
    DemodPipeline pipeline_;
    std::vector<double> raw_hold_, raw_volts_;
    std::int64_t saturated_ = 0;
};

// One-shot convenience: full RF-level acquisition of a deviation record.
struct BoardRun {
    PhaseIncrementStream intermediate;
    PhaseIncrementStream output;
    std::int64_t saturated = 0;
    std::int64_t carrier_lost = 0;
};

BoardRun run_board(const BoardConfig& config, std::span<const double> pd_freq);

} // namespace phaselink
