#include "phaselink/model/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phaselink {

void NoiseSpec::validate() const
{
    if (white_phase_level < 0.0 || white_freq_level < 0.0 || random_walk_freq_level < 0.0)
        throw std::invalid_argument("noise PSD levels must be non-negative");
    if (bandwidth_hz < 0.0)
        throw std::invalid_argument("noise bandwidth must be non-negative");
}

PowerLawNoiseGenerator::PowerLawNoiseGenerator(const NoiseSpec& spec, double rate) : spec_(spec), rate_(rate)
{
    spec_.validate();
    if (!(rate > 0.0))
        throw std::invalid_argument("rate must be positive");
    // One-sided level L over the [0, rate/2] band puts L*rate/2 of power in
    // each white sample; the random-walk step makes the summed PSD level/f^2.
    sigma_wf_ = std::sqrt(spec.white_freq_level * rate / 2.0);
    sigma_wp_ = std::sqrt(spec.white_phase_level * rate / 2.0);
    sigma_rw_ = std::numbers::pi * std::sqrt(2.0 * spec.random_walk_freq_level / rate);
    if (spec.bandwidth_hz > 0.0)
        alpha_bw_ = 1.0 - std::exp(-2.0 * std::numbers::pi * spec.bandwidth_hz / rate);
}

double PowerLawNoiseGenerator::white_draw(int component, std::uint64_t index)
{
    std::uint64_t block = index / kBlock;
    BlockSource& cache = sources_[component];
    if (cache.block != block) {
        cache.block = block;
        cache.source = GaussianSource(
            derive_seed(spec_.seed, (static_cast<std::uint64_t>(component) << 48) + block));
    }
    return cache.source.next();
}

void PowerLawNoiseGenerator::generate(std::size_t n, std::vector<double>& out)
{
    out.reserve(out.size() + n);
    const double dphi_scale = rate_ / (2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < n; ++k, ++index_) {
        double value = 0.0;
        if (sigma_wf_ != 0.0) {
            double w = sigma_wf_ * white_draw(0, index_);
            if (alpha_bw_ != 0.0) {
                bw_state_ += alpha_bw_ * (w - bw_state_);
                w = bw_state_;
            }
            value += w;
        }
        if (sigma_wp_ != 0.0) {
            double phi = sigma_wp_ * white_draw(1, index_);
            value += (phi - prev_phi_) * dphi_scale;
            prev_phi_ = phi;
        }
        if (sigma_rw_ != 0.0) {
            rw_state_ += sigma_rw_ * white_draw(2, index_);
            value += rw_state_;
        }
        if (spec_.drift_rate != 0.0)
            value += spec_.drift_rate * static_cast<double>(index_) / rate_;
        out.push_back(value);
    }
}

std::vector<double> PowerLawNoiseGenerator::take(std::size_t n)
{
    std::vector<double> out;
    generate(n, out);
    return out;
}

std::vector<double> generate_power_law_noise(const NoiseSpec& spec, std::size_t n, double rate)
{
    PowerLawNoiseGenerator gen(spec, rate);
    return gen.take(n);
}

} // namespace phaselink
