#include "phaselink/dsp/demod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phaselink {

Demodulator::Demodulator(const DemodConfig& config, DemodFilterBank bank)
    : config_(config), bank_(std::move(bank))
{
    config_.validate();
    decim_ = config_.demod_decimation();
    taps_ = config_.demod_taps();
    if (static_cast<int>(bank_.lowpass.size()) != taps_)
        throw std::invalid_argument("filter bank does not match the configuration tap count");
    settling_outputs_ = (taps_ - 1 + decim_ - 1) / decim_;
    window_.assign(static_cast<std::size_t>(taps_ - 1), 0.0);
}

void Demodulator::reset()
{
    consumed_ = 0;
    outputs_emitted_ = 0;
    window_.assign(static_cast<std::size_t>(taps_ - 1), 0.0);
}

void Demodulator::process(std::span<const double> raw, std::vector<IQSample>& out)
{
    if (raw.empty())
        return;
    const std::size_t hist = static_cast<std::size_t>(taps_ - 1);
    window_.resize(hist + raw.size());
    std::copy(raw.begin(), raw.end(), window_.begin() + static_cast<std::ptrdiff_t>(hist));

    // Emission instants are raw indices divisible by the decimation factor,
    // which keeps every output window aligned to a reference-cycle boundary.
    std::int64_t k = (decim_ - consumed_ % decim_) % decim_;
    const int half = taps_ / 2;
    const double* ip = bank_.in_phase_packed.data();
    const double* qp = bank_.quadrature_packed.data();
    for (; k < static_cast<std::int64_t>(raw.size()); k += decim_) {
        const double* x = window_.data() + hist + k;
        double iacc = 0.0;
        double qacc = 0.0;
        for (int t = 0; t < half; ++t)
            iacc += ip[t] * x[-2 * t];
        for (int t = 0; t < half; ++t)
            qacc += qp[t] * x[-2 * t - 1];
        // Branch rotation: the accumulators mix against (cos, sin); emitting
        // (-q, +i) re-labels the pair so atan2(q, i) tracks the signal phase.
        out.push_back(IQSample{-qacc, iacc});
        ++outputs_emitted_;
    }
    consumed_ += static_cast<std::int64_t>(raw.size());

    if (window_.size() > hist)
        std::copy(window_.end() - static_cast<std::ptrdiff_t>(hist), window_.end(), window_.begin());
    window_.resize(hist);
}

PhaseAmplitudeSample extract_amplitude_phase(const IQSample& s)
{
    PhaseAmplitudeSample out;
    if (s.i == 0.0 && s.q == 0.0) {
        out.carrier_lost = true;
        return out;
    }
    out.amplitude = 2.0 * std::hypot(s.i, s.q);
    double phase = std::atan2(s.q, s.i);
    if (phase <= -std::numbers::pi)
        phase = std::numbers::pi; // the two endpoints are the same physical phase
    out.wrapped_phase = phase;
    return out;
}

} // namespace phaselink
