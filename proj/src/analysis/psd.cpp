#include "phaselink/analysis/psd.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace phaselink {

namespace {

// FFTW planning mutates global state; execution on distinct buffers does not.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

PsdEstimate welch_psd(const std::vector<double>& series, double rate, std::size_t segment, double overlap)
{
    if (!(rate > 0.0))
        throw std::invalid_argument("rate must be positive");
    if (segment < 2 || segment > series.size())
        throw std::invalid_argument("segment length must lie in [2, series length]");
    if (!(overlap >= 0.0) || !(overlap >= 0.0 && overlap < 1.0))
        throw std::invalid_argument("overlap fraction must lie in [0, 1)");

    const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround((1.0 - overlap) * static_cast<double>(segment))));
    const std::size_t bins = segment / 2 + 1;

    std::vector<double> window(segment);
    double win_power = 0.0;
    for (std::size_t n = 0; n < segment; ++n) {
        window[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(segment)));
        win_power += window[n] * window[n];
    }

    double* in = fftw_alloc_real(segment);
    fftw_complex* out = fftw_alloc_complex(bins);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(segment), in, out, FFTW_ESTIMATE);
    }

    PsdEstimate est;
    est.psd.assign(bins, 0.0);
    std::size_t count = 0;
    for (std::size_t start = 0; start + segment <= series.size(); start += hop) {
        for (std::size_t n = 0; n < segment; ++n)
            in[n] = series[start + n] * window[n];
        fftw_execute(plan);
        for (std::size_t k = 0; k < bins; ++k) {
            double re = out[k][0];
            double im = out[k][1];
            est.psd[k] += re * re + im * im;
        }
        ++count;
    }

    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);

    if (count == 0)
        throw std::invalid_argument("series shorter than one segment");

    const double scale = 1.0 / (rate * win_power * static_cast<double>(count));
    for (std::size_t k = 0; k < bins; ++k) {
        double one_sided = (k == 0 || (segment % 2 == 0 && k == bins - 1)) ? 1.0 : 2.0;
        est.psd[k] *= scale * one_sided;
    }
    est.freq_hz.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        est.freq_hz[k] = static_cast<double>(k) * rate / static_cast<double>(segment);
    est.resolution_hz = rate / static_cast<double>(segment);
    est.segments = count;
    return est;
}

double band_average(const PsdEstimate& est, double f_lo, double f_hi)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < est.freq_hz.size(); ++k) {
        if (est.freq_hz[k] >= f_lo && est.freq_hz[k] <= f_hi) {
            sum += est.psd[k];
            ++n;
        }
    }
    if (n == 0)
        throw std::invalid_argument("no estimate bins inside the requested band");
    return sum / static_cast<double>(n);
}

double psd_integral(const PsdEstimate& est)
{
    double sum = 0.0;
    for (double p : est.psd)
        sum += p;
    return sum * est.resolution_hz;
}

} // namespace phaselink
