#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phaselink {

struct ToneSpec {
    double amplitude = 1.0;      // volts peak, as seen by the sampler
    double carrier_hz = 1.0e6;
    double initial_phase = 0.0;  // radians
};

/**
 * Streaming beat-note voltage synthesis: A * sin(2*pi*carrier*t + phi(t)),
 * where phi accumulates the supplied frequency-fluctuation series. The
 * carrier phase advances through a wrapped cycle accumulator, so a noiseless
 * quarter-rate tone repeats its four-sample pattern exactly and long runs
 * accumulate no phase drift beyond one rounding per sample.
 */
class BeatnoteSynthesizer {
  public:
    BeatnoteSynthesizer(const ToneSpec& tone, double sample_rate_hz);

    // Appends n samples; freq_noise (Hz) must be empty or hold n entries.
    void generate(std::span<const double> freq_noise, std::size_t n, std::vector<double>& out);

  private:
    ToneSpec tone_;
    double rate_ = 0.0;
    double cycle_step_ = 0.0;
    double cycle_acc_ = 0.0;
    double noise_phase_ = 0.0; // radians, kept wrapped
};

std::vector<double> synthesize_beatnote(const ToneSpec& tone, std::span<const double> freq_fluctuations,
                                        std::size_t n, double sample_rate_hz);

} // namespace phaselink
