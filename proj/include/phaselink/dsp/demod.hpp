#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/dsp/filter_design.hpp"

namespace phaselink {

struct IQSample {
    double i = 0.0; // volts
    double q = 0.0; // volts
};

struct PhaseAmplitudeSample {
    double amplitude = 0.0;    // volts, peak
    double wrapped_phase = 0.0; // radians in (-pi, +pi]
    bool carrier_lost = false;
};

/**
 * Streaming quarter-cycle IQ demodulator.
 *
 * One IQ pair is emitted per sample_rate/intermediate_rate raw samples; each
 * output is the dot product of the combined tap set with the most recent
 * window. Output instants land on reference-cycle boundaries, which makes the
 * combined filter arithmetic identical to mixing with the references followed
 * by lowpass filtering and decimation. The effective in-phase reference is
 * sin(2*pi*carrier*t) and the quadrature reference cos(2*pi*carrier*t), with
 * reference phase zero at the first consumed sample, so atan2(q, i) recovers
 * phi for an input A*sin(2*pi*carrier*t + phi).
 *
 * The first outputs, whose window still overlaps the zero-initialized history
 * (raw index below num_taps - 1), are settling; settled_from() gives the index
 * of the first clean output. No shared mutable state: distinct instances may
 * run on distinct threads.
 */
class Demodulator {
  public:
    Demodulator(const DemodConfig& config, DemodFilterBank bank);

    // Consumes a block of raw volts and appends demodulated pairs to out.
    void process(std::span<const double> raw, std::vector<IQSample>& out);

    std::int64_t outputs_emitted() const { return outputs_emitted_; }
    std::int64_t settled_from() const { return settling_outputs_; }
    void reset();

  private:
    DemodConfig config_;
    DemodFilterBank bank_;
    int decim_ = 0;
    int taps_ = 0;
    std::int64_t consumed_ = 0;
    std::int64_t outputs_emitted_ = 0;
    std::int64_t settling_outputs_ = 0;
    std::vector<double> window_; // taps_-1 history samples followed by the current block
};

// Amplitude and wrapped phase from one IQ pair; the zero pair flags a lost
// carrier and reports zero phase rather than propagating atan2(0, 0).
PhaseAmplitudeSample extract_amplitude_phase(const IQSample& s);

} // namespace phaselink
