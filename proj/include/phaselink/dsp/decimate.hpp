#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/dsp/filter_design.hpp"
#include "phaselink/dsp/unwrap.hpp"

namespace phaselink {

/**
 * Streaming FIR filter with downsampling. Outputs are emitted at input indices
 * divisible by the decimation factor, starting from the first sample against a
 * zero-initialized history; settled_from() is the first output whose window
 * holds only real samples.
 */
class FirDecimator {
  public:
    FirDecimator(std::vector<double> taps, int factor);

    void process(std::span<const double> in, std::vector<double>& out);
    std::int64_t settled_from() const { return settling_outputs_; }
    void reset();

    // One-shot convenience on a whole series.
    static std::vector<double> apply(const std::vector<double>& series, const std::vector<double>& taps, int factor);

  private:
    std::vector<double> taps_;
    int factor_ = 1;
    std::int64_t consumed_ = 0;
    std::int64_t settling_outputs_ = 0;
    std::vector<double> window_;
};

/**
 * Anti-aliased reduction of an intermediate-rate increment stream to the
 * output rate. Both channels pass the same Hamming lowpass (cutoff one third
 * of the output rate); filtered increments are rescaled by the rate ratio so
 * they read as radians per output sample and delta_nu = dphi * f_out / (2*pi)
 * still holds downstream.
 */
class OutputDecimator {
  public:
    explicit OutputDecimator(const DemodConfig& config);

    void process(std::span<const double> increments, std::span<const double> amplitudes, PhaseIncrementStream& out);
    std::int64_t settled_from() const { return phase_.settled_from(); }
    const std::vector<double>& taps() const { return design_; }
    void reset();

  private:
    std::vector<double> design_;
    FirDecimator phase_;
    FirDecimator amplitude_;
    double scale_ = 1.0;
};

// One-shot decimation of a full intermediate-rate stream.
PhaseIncrementStream decimate_output(const PhaseIncrementStream& intermediate, const DemodConfig& config);

} // namespace phaselink
