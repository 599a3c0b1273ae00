#include "phaselink/dsp/filter_design.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phaselink {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

bool is_multiple(double a, double b)
{
    if (b <= 0.0)
        return false;
    double r = a / b;
    return std::abs(r - std::round(r)) < 1e-9;
}

} // namespace

std::vector<double> design_lowpass_hamming(int num_taps, double cutoff_hz, double sample_rate_hz)
{
    if (num_taps < 2)
        throw std::invalid_argument("lowpass design needs at least 2 taps");
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0))
        throw std::invalid_argument("lowpass cutoff must lie in (0, sample_rate/2)");

    std::vector<double> taps(static_cast<std::size_t>(num_taps));
    const double mid = (num_taps - 1) / 2.0;
    const double norm_cut = 2.0 * cutoff_hz / sample_rate_hz;
    double sum = 0.0;
    // Window and sinc are both even around the midpoint; computing one half
    // and mirroring keeps the taps exactly symmetric (exact linear phase).
    for (int n = 0; n <= (num_taps - 1) / 2; ++n) {
        int peer = num_taps - 1 - n;
        double window = 0.54 - 0.46 * std::cos(2.0 * kPi * n / (num_taps - 1));
        double value = norm_cut * sinc(norm_cut * (n - mid)) * window;
        taps[static_cast<std::size_t>(n)] = value;
        taps[static_cast<std::size_t>(peer)] = value;
        sum += peer == n ? value : 2.0 * value;
    }
    for (double& t : taps)
        t /= sum;
    return taps;
}

std::complex<double> fir_response(const std::vector<double>& taps, double freq_hz, double sample_rate_hz)
{
    const double w = 2.0 * kPi * freq_hz / sample_rate_hz;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < taps.size(); ++n)
        acc += taps[n] * std::exp(std::complex<double>(0.0, -w * static_cast<double>(n)));
    return acc;
}

double fir_response_db(const std::vector<double>& taps, double freq_hz, double sample_rate_hz)
{
    double mag = std::abs(fir_response(taps, freq_hz, sample_rate_hz));
    return 20.0 * std::log10(std::max(mag, 1e-300));
}

void DemodConfig::validate() const
{
    if (!(sample_rate_hz > 0.0) || !(carrier_hz > 0.0))
        throw std::invalid_argument("rates must be positive");
    if (std::abs(sample_rate_hz - 4.0 * carrier_hz) > 1e-6)
        throw std::invalid_argument("sample rate must be exactly four times the carrier");
    if (intermediate_rate_hz < 10e3 || intermediate_rate_hz > 200e3)
        throw std::invalid_argument("intermediate rate outside supported range [10 kHz, 200 kHz]");
    if (output_rate_hz < 500.0 || output_rate_hz > 20e3)
        throw std::invalid_argument("output rate outside supported range [500 Hz, 20 kHz]");
    if (!is_multiple(sample_rate_hz, intermediate_rate_hz))
        throw std::invalid_argument("sample rate must be an integer multiple of the intermediate rate");
    if (!is_multiple(carrier_hz, intermediate_rate_hz))
        throw std::invalid_argument("carrier must be an integer multiple of the intermediate rate");
    if (!is_multiple(intermediate_rate_hz, output_rate_hz))
        throw std::invalid_argument("intermediate rate must be an integer multiple of the output rate");
}

DemodFilterBank build_demod_bank(const std::vector<double>& lowpass, const DemodConfig& config)
{
    config.validate();
    if (static_cast<int>(lowpass.size()) != config.demod_taps())
        throw std::invalid_argument("lowpass length does not match the configured tap count: expected " +
                                    std::to_string(config.demod_taps()));

    DemodFilterBank bank;
    bank.lowpass = lowpass;
    bank.in_phase.resize(lowpass.size());
    bank.quadrature.resize(lowpass.size());
    // Quarter-cycle references: r_i cycles (1, 0, -1, 0), r_q cycles (0, 1, 0, -1).
    for (std::size_t n = 0; n < lowpass.size(); ++n) {
        switch (n % 4) {
        case 0:
            bank.in_phase[n] = lowpass[n];
            break;
        case 1:
            bank.quadrature[n] = lowpass[n];
            break;
        case 2:
            bank.in_phase[n] = -lowpass[n];
            break;
        default:
            bank.quadrature[n] = -lowpass[n];
            break;
        }
    }
    for (std::size_t n = 0; n < lowpass.size(); n += 2)
        bank.in_phase_packed.push_back(bank.in_phase[n]);
    for (std::size_t n = 1; n < lowpass.size(); n += 2)
        bank.quadrature_packed.push_back(bank.quadrature[n]);
    return bank;
}

} // namespace phaselink
