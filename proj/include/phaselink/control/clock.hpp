#pragma once

#include <cstdint>

#include "phaselink/model/rng.hpp"

namespace phaselink {

/**
 * Oven-stabilized oscillator error model: fractional frequency error is a
 * constant offset, plus linear aging drift_per_s * t, plus optional white
 * noise, minus whatever tune correction resynchronization applied. With noise
 * off the accumulated timescale error is exactly offset*t + drift*t^2/2.
 */
struct OcxoModel {
    double nominal_hz = 10.0e6;
    double fractional_offset = 0.0;
    double drift_per_s = 2.0e-13;   // fractional frequency per second of aging
    double white_fm_level = 0.0;    // one-sided fractional-frequency PSD, 1/Hz
    std::uint64_t seed = 1;
};

class OcxoClock {
  public:
    explicit OcxoClock(const OcxoModel& model);

    // Advances true time by dt and returns the locally counted duration.
    double advance(double true_dt);

    double true_time() const { return true_time_; }
    double local_time() const { return local_time_; }
    double offset() const { return local_time_ - true_time_; } // seconds

    double tune() const { return tune_; }

    /**
     * Timescale correction from one resynchronization event: the local
     * timescale snaps to true time plus the supplied trigger jitter, and when
     * adjust_tune is set the mean fractional error measured since the last
     * resync is folded into the tune word, nulling the estimated frequency
     * offset going forward.
     */
    void resync(double jitter_s, bool adjust_tune);

  private:
    OcxoModel model_;
    GaussianSource noise_;
    double true_time_ = 0.0;
    double local_time_ = 0.0;
    double tune_ = 0.0;
    double last_resync_true_ = 0.0;
    double offset_at_resync_ = 0.0;
};

} // namespace phaselink
