#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/dsp/decimate.hpp"
#include "phaselink/dsp/demod.hpp"
#include "phaselink/dsp/filter_design.hpp"
#include "phaselink/dsp/unwrap.hpp"

namespace phaselink {

/**
 * Full single-channel processing chain: raw samples to demodulated IQ, phase
 * and amplitude extraction, single-step unwrap, then anti-aliased reduction to
 * the output rate. Both the intermediate-rate and output-rate increment
 * streams stay accessible; the intermediate stream is what trigger evaluation
 * watches, the output stream is what gets framed onto the wire.
 *
 * Stages hand values forward with no shared mutable state, so independent
 * channels can run concurrently on independent pipelines. All arithmetic is
 * double precision end to end.
 */
class DemodPipeline {
  public:
    explicit DemodPipeline(const DemodConfig& config);

    // Consumes one block of raw volts (front-end conditioning already applied).
    void push(std::span<const double> raw);

    const DemodConfig& config() const { return config_; }
    const DemodFilterBank& bank() const { return bank_; }
    const PhaseIncrementStream& intermediate() const { return intermediate_; }
    const PhaseIncrementStream& output() const { return output_; }
    std::int64_t carrier_lost_count() const { return carrier_lost_; }
    std::int64_t raw_consumed() const { return raw_consumed_; }

  private:
    DemodConfig config_;
    DemodFilterBank bank_;
    Demodulator demod_;
    OutputDecimator decimator_;
    PhaseIncrementStream intermediate_;
    PhaseIncrementStream output_;
    std::vector<IQSample> iq_scratch_;
    std::size_t decimated_through_ = 0;
    double prev_phase_ = 0.0;
    std::int64_t carrier_lost_ = 0;
    std::int64_t raw_consumed_ = 0;
};

// Mean beat deviation in Hz over the settled part of a stream.
double mean_frequency(const PhaseIncrementStream& stream);

} // namespace phaselink
