#include "phaselink/analysis/adev.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselink {

std::vector<AdevPoint> overlapping_adev(const std::vector<double>& freq_series, double rate,
                                        const std::vector<double>& taus)
{
    if (!(rate > 0.0))
        throw std::invalid_argument("rate must be positive");
    const std::size_t n = freq_series.size();

    // Prefix sums give O(1) cluster means at every offset.
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        prefix[j + 1] = prefix[j] + freq_series[j];

    std::vector<AdevPoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        AdevPoint point;
        point.tau_s = tau;
        double m_real = tau * rate;
        auto m = static_cast<long long>(std::llround(m_real));
        if (m < 1 || std::abs(m_real - static_cast<double>(m)) > 1e-6 * std::max(1.0, m_real))
            throw std::invalid_argument("tau must be an integer multiple of the sample interval");
        if (static_cast<std::size_t>(2 * m) >= n) {
            out.push_back(point); // record too short, flagged invalid
            continue;
        }
        const std::size_t terms = n - static_cast<std::size_t>(2 * m) + 1;
        double acc = 0.0;
        for (std::size_t j = 0; j < terms; ++j) {
            double a = prefix[j + static_cast<std::size_t>(m)] - prefix[j];
            double b = prefix[j + static_cast<std::size_t>(2 * m)] - prefix[j + static_cast<std::size_t>(m)];
            double d = (b - a) / static_cast<double>(m);
            acc += d * d;
        }
        point.adev = std::sqrt(acc / (2.0 * static_cast<double>(terms)));
        point.valid = true;
        out.push_back(point);
    }
    return out;
}

std::vector<double> decade_taus(double tau_min, double tau_max)
{
    if (!(tau_min > 0.0) || tau_max < tau_min)
        throw std::invalid_argument("need 0 < tau_min <= tau_max");
    static const double steps[] = {1.0, 2.0, 5.0};
    std::vector<double> taus;
    double decade = std::pow(10.0, std::floor(std::log10(tau_min)));
    for (; decade <= tau_max; decade *= 10.0) {
        for (double s : steps) {
            double t = s * decade;
            if (t >= tau_min * (1.0 - 1e-12) && t <= tau_max * (1.0 + 1e-12))
                taus.push_back(t);
        }
    }
    return taus;
}

} // namespace phaselink
