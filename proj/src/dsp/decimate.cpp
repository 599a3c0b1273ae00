#include "phaselink/dsp/decimate.hpp"

#include <algorithm>
#include <stdexcept>

namespace phaselink {

FirDecimator::FirDecimator(std::vector<double> taps, int factor)
    : taps_(std::move(taps)), factor_(factor)
{
    if (taps_.empty() || factor_ < 1)
        throw std::invalid_argument("decimator needs taps and a positive factor");
    settling_outputs_ = (static_cast<std::int64_t>(taps_.size()) - 1 + factor_ - 1) / factor_;
    window_.assign(taps_.size() - 1, 0.0);
}

void FirDecimator::reset()
{
    consumed_ = 0;
    window_.assign(taps_.size() - 1, 0.0);
}

void FirDecimator::process(std::span<const double> in, std::vector<double>& out)
{
    if (in.empty())
        return;
    const std::size_t hist = taps_.size() - 1;
    window_.resize(hist + in.size());
    std::copy(in.begin(), in.end(), window_.begin() + static_cast<std::ptrdiff_t>(hist));

    std::int64_t k = (factor_ - consumed_ % factor_) % factor_;
    const int n_taps = static_cast<int>(taps_.size());
    for (; k < static_cast<std::int64_t>(in.size()); k += factor_) {
        const double* x = window_.data() + hist + k;
        double acc = 0.0;
        for (int t = 0; t < n_taps; ++t)
            acc += taps_[static_cast<std::size_t>(t)] * x[-t];
        out.push_back(acc);
    }
    consumed_ += static_cast<std::int64_t>(in.size());

    if (window_.size() > hist)
        std::copy(window_.end() - static_cast<std::ptrdiff_t>(hist), window_.end(), window_.begin());
    window_.resize(hist);
}

std::vector<double> FirDecimator::apply(const std::vector<double>& series, const std::vector<double>& taps, int factor)
{
    FirDecimator dec(taps, factor);
    std::vector<double> out;
    out.reserve(series.size() / static_cast<std::size_t>(factor) + 1);
    dec.process(series, out);
    return out;
}

OutputDecimator::OutputDecimator(const DemodConfig& config)
    : design_(design_lowpass_hamming(config.decim_taps(), config.decim_cutoff_hz(), config.intermediate_rate_hz)),
      phase_(design_, config.output_decimation()),
      amplitude_(design_, config.output_decimation()),
      scale_(static_cast<double>(config.output_decimation()))
{
}

void OutputDecimator::reset()
{
    phase_.reset();
    amplitude_.reset();
}

void OutputDecimator::process(std::span<const double> increments, std::span<const double> amplitudes,
                              PhaseIncrementStream& out)
{
    if (increments.size() != amplitudes.size())
        throw std::invalid_argument("increment and amplitude channels must stay in lockstep");
    std::size_t before = out.increments.size();
    phase_.process(increments, out.increments);
    amplitude_.process(amplitudes, out.amplitudes);
    for (std::size_t n = before; n < out.increments.size(); ++n)
        out.increments[n] *= scale_;
}

PhaseIncrementStream decimate_output(const PhaseIncrementStream& intermediate, const DemodConfig& config)
{
    OutputDecimator dec(config);
    PhaseIncrementStream out;
    out.rate = config.output_rate_hz;
    dec.process(intermediate.increments, intermediate.amplitudes, out);
    // First clean output: its whole window must lie past the upstream settling
    // boundary, and past this stage's own zero-initialized history.
    const std::int64_t window = config.decim_taps() - 1;
    const std::int64_t ratio = config.output_decimation();
    const std::int64_t upstream = intermediate.valid_from + window;
    out.valid_from = std::max<std::int64_t>(dec.settled_from(), (upstream + ratio - 1) / ratio);
    return out;
}

} // namespace phaselink
