#include "phaselink/model/beatnote.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phaselink/dsp/unwrap.hpp"

namespace phaselink {

BeatnoteSynthesizer::BeatnoteSynthesizer(const ToneSpec& tone, double sample_rate_hz)
    : tone_(tone), rate_(sample_rate_hz)
{
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("sample rate must be positive");
    if (!(tone.carrier_hz >= 0.0) || tone.carrier_hz >= sample_rate_hz / 2.0)
        throw std::invalid_argument("carrier must lie below the Nyquist rate");
    cycle_step_ = tone.carrier_hz / sample_rate_hz;
}

void BeatnoteSynthesizer::generate(std::span<const double> freq_noise, std::size_t n, std::vector<double>& out)
{
    if (!freq_noise.empty() && freq_noise.size() < n)
        throw std::invalid_argument("fluctuation series shorter than the requested block");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    out.reserve(out.size() + n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!freq_noise.empty())
            noise_phase_ = wrap_phase(noise_phase_ + two_pi * freq_noise[k] / rate_);
        out.push_back(tone_.amplitude * std::sin(two_pi * cycle_acc_ + noise_phase_ + tone_.initial_phase));
        cycle_acc_ += cycle_step_;
        if (cycle_acc_ >= 1.0)
            cycle_acc_ -= 1.0;
    }
}

std::vector<double> synthesize_beatnote(const ToneSpec& tone, std::span<const double> freq_fluctuations,
                                        std::size_t n, double sample_rate_hz)
{
    BeatnoteSynthesizer synth(tone, sample_rate_hz);
    std::vector<double> out;
    synth.generate(freq_fluctuations, n, out);
    return out;
}

} // namespace phaselink
