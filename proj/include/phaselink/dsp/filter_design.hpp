#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace phaselink {

/**
 * Windowed-sinc lowpass design, Hamming weighted, normalized to unit DC gain.
 *
 * The returned taps are symmetric (linear phase) and sum to exactly 1 after
 * normalization, so a constant stream passes unchanged.
 */
std::vector<double> design_lowpass_hamming(int num_taps, double cutoff_hz, double sample_rate_hz);

// Complex frequency response of an FIR at one frequency.
std::complex<double> fir_response(const std::vector<double>& taps, double freq_hz, double sample_rate_hz);

// Magnitude response in dB relative to unity.
double fir_response_db(const std::vector<double>& taps, double freq_hz, double sample_rate_hz);

/**
 * Acquisition geometry for one demodulation channel.
 *
 * The quarter-cycle tap structure requires sample_rate = 4 * carrier and the
 * carrier an integer multiple of the intermediate rate; the intermediate rate
 * must in turn be an integer multiple of the output rate. validate() enforces
 * the full grid, including the supported ranges for both derived rates.
 */
struct DemodConfig {
    double sample_rate_hz = 4.0e6;
    double carrier_hz = 1.0e6;
    double intermediate_rate_hz = 1.0e5;
    double output_rate_hz = 1.0e3;
    std::uint16_t config_id = 1;

    int demod_taps() const { return static_cast<int>(8.0 * sample_rate_hz / intermediate_rate_hz); }
    int decim_taps() const { return static_cast<int>(12.0 * intermediate_rate_hz / output_rate_hz); }
    double demod_cutoff_hz() const { return intermediate_rate_hz / 8.0; }
    double decim_cutoff_hz() const { return output_rate_hz / 3.0; }
    int demod_decimation() const { return static_cast<int>(sample_rate_hz / intermediate_rate_hz); }
    int output_decimation() const { return static_cast<int>(intermediate_rate_hz / output_rate_hz); }

    void validate() const; // throws std::invalid_argument on any grid violation
};

/**
 * Combined mixing + lowpass tap set for one channel.
 *
 * in_phase[i] multiplies the cosine reference sample r_i[i] into the lowpass
 * prototype and quadrature[i] the sine reference r_q[i]; with the quarter-cycle
 * grid every second entry of each branch is exactly zero and the two zero
 * patterns are complementary. The packed arrays keep only the nonzero taps
 * (reference signs folded in) for the inner loop.
 */
struct DemodFilterBank {
    std::vector<double> lowpass;
    std::vector<double> in_phase;
    std::vector<double> quadrature;
    std::vector<double> in_phase_packed;   // in_phase[2k], k ascending
    std::vector<double> quadrature_packed; // quadrature[2k+1], k ascending
};

DemodFilterBank build_demod_bank(const std::vector<double>& lowpass, const DemodConfig& config);

} // namespace phaselink
