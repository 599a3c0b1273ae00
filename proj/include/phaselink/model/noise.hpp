#pragma once

#include <cstdint>
#include <vector>

#include "phaselink/model/rng.hpp"

namespace phaselink {

/**
 * Target spectral composition of a frequency-fluctuation process, given as
 * one-sided PSD levels plus a deterministic linear drift:
 *
 *   white_phase_level      flat phase PSD in rad^2/Hz (frequency PSD f^2-shaped)
 *   white_freq_level       flat frequency PSD in Hz^2/Hz
 *   random_walk_freq_level frequency PSD level/f^2 in Hz^2*Hz
 *   drift_rate             Hz/s ramp added in the time domain
 *
 * bandwidth_hz, when positive, rolls the white-frequency component off with a
 * single pole at that frequency (unit DC gain, so the low-frequency level is
 * unchanged); zero leaves it flat to Nyquist.
 */
struct NoiseSpec {
    double white_phase_level = 0.0;
    double white_freq_level = 0.0;
    double random_walk_freq_level = 0.0;
    double drift_rate = 0.0;
    double bandwidth_hz = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
    bool is_silent() const
    {
        return white_phase_level == 0.0 && white_freq_level == 0.0 && random_walk_freq_level == 0.0 &&
               drift_rate == 0.0;
    }
};

/**
 * Streaming synthesizer for the composite process. Each power law is realized
 * exactly in the time domain: white frequency as a scaled white sequence,
 * white phase as the first difference of a white phase sequence, random-walk
 * frequency as the running sum of a white sequence. White draws come from
 * block-derived seeds (blocks of 65536 samples), so the white parts of
 * disjoint index ranges can be evaluated independently; the integrated states
 * carry forward sequentially. Identical (spec, rate) give bit-identical
 * output.
 */
class PowerLawNoiseGenerator {
  public:
    PowerLawNoiseGenerator(const NoiseSpec& spec, double rate);

    // Appends n samples of frequency fluctuation in Hz.
    void generate(std::size_t n, std::vector<double>& out);
    std::vector<double> take(std::size_t n);

    static constexpr std::size_t kBlock = 65536;

  private:
    double white_draw(int component, std::uint64_t index);

    NoiseSpec spec_;
    double rate_ = 0.0;
    double sigma_wf_ = 0.0;   // per-sample white-frequency deviation, Hz
    double sigma_wp_ = 0.0;   // per-sample white-phase deviation, rad
    double sigma_rw_ = 0.0;   // per-step random-walk increment, Hz
    double alpha_bw_ = 0.0;   // one-pole coefficient for bandwidth_hz
    std::uint64_t index_ = 0;
    double prev_phi_ = 0.0;   // last white-phase sample, rad
    double rw_state_ = 0.0;   // integrated random walk, Hz
    double bw_state_ = 0.0;   // one-pole state for the white-frequency branch
    // cached per-component block sources
    struct BlockSource {
        std::uint64_t block = ~0ULL;
        GaussianSource source{0};
    };
    BlockSource sources_[3];
};

std::vector<double> generate_power_law_noise(const NoiseSpec& spec, std::size_t n, double rate);

} // namespace phaselink
