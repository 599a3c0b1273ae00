#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "phaselink/analysis/adev.hpp"
#include "phaselink/analysis/fit.hpp"
#include "phaselink/analysis/psd.hpp"
#include "phaselink/model/rng.hpp"

using namespace phaselink;

namespace {

double variance(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("spectral estimate preserves tone power and total variance")
{
    const double rate = 4096.0;
    const double amp = 0.5, f0 = 384.0;
    std::vector<double> x(1 << 16);
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = amp * std::sin(2.0 * std::numbers::pi * f0 * static_cast<double>(k) / rate);

    auto est = welch_psd(x, rate, 1024);
    CHECK(est.resolution_hz == doctest::Approx(4.0));
    CHECK(est.freq_hz.size() == 513);
    CHECK(est.segments >= 120);

    // Integrate a window around the tone: a^2/2 of power.
    double power = 0.0;
    for (std::size_t i = 0; i < est.freq_hz.size(); ++i)
        if (std::abs(est.freq_hz[i] - f0) <= 16.0)
            power += est.psd[i] * est.resolution_hz;
    CHECK(std::abs(power / (amp * amp / 2.0) - 1.0) < 0.02);
    CHECK(std::abs(psd_integral(est) / variance(x) - 1.0) < 0.02);
}

TEST_CASE("unit white noise sits at the two-over-rate spectral floor")
{
    const double rate = 1.0e4;
    GaussianSource g(31);
    std::vector<double> x(1 << 18);
    for (double& v : x)
        v = g.next();

    auto est = welch_psd(x, rate, 4096);
    double level = band_average(est, 500.0, 4500.0);
    CHECK(std::abs(10.0 * std::log10(level / (2.0 / rate))) < 1.0);
    CHECK(std::abs(psd_integral(est) / variance(x) - 1.0) < 0.03);

    CHECK_THROWS_AS(welch_psd(x, rate, 1), std::invalid_argument);
    CHECK_THROWS_AS(band_average(est, 4000.0, 1000.0), std::invalid_argument);
}

TEST_CASE("deviation of white frequency noise falls as the square root of tau")
{
    const double rate = 100.0;
    const double sigma = 2.0;
    GaussianSource g(32);
    std::vector<double> x(200000);
    for (double& v : x)
        v = sigma * g.next();

    auto points = overlapping_adev(x, rate, {0.01, 0.1, 1.0});
    REQUIRE(points.size() == 3);
    CHECK(points[0].adev == doctest::Approx(sigma).epsilon(0.03));
    CHECK(points[1].adev == doctest::Approx(sigma / std::sqrt(10.0)).epsilon(0.05));
    CHECK(points[2].adev == doctest::Approx(sigma / 10.0).epsilon(0.1));
}

TEST_CASE("deviation points that outrun the record come back flagged")
{
    std::vector<double> x(100, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = static_cast<double>(i % 7);
    auto points = overlapping_adev(x, 100.0, {0.01, 0.9});
    CHECK(points[0].valid);
    CHECK(!points[1].valid);
    CHECK(points[1].adev == 0.0);
    CHECK_THROWS_AS(overlapping_adev(x, 100.0, {0.015}), std::invalid_argument);
}

TEST_CASE("tau ladder spans decades on the one-two-five grid")
{
    auto taus = decade_taus(1.0e-3, 1.0);
    REQUIRE(taus.size() == 10);
    CHECK(taus.front() == doctest::Approx(1.0e-3));
    CHECK(taus[1] == doctest::Approx(2.0e-3));
    CHECK(taus[2] == doctest::Approx(5.0e-3));
    CHECK(taus.back() == doctest::Approx(1.0));
    CHECK_THROWS_AS(decade_taus(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("least squares recovers exact lines and honest error bars")
{
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(3.0 * static_cast<double>(i) + 2.0);
    }
    auto fit = linear_fit(x, y);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.residual_rms < 1e-12);

    GaussianSource g(33);
    std::vector<double> xn, yn;
    for (int i = 0; i < 2000; ++i) {
        xn.push_back(static_cast<double>(i) / 100.0);
        yn.push_back(1.5 * xn.back() - 4.0 + 0.1 * g.next());
    }
    auto nf = linear_fit(xn, yn);
    CHECK(std::abs(nf.slope - 1.5) < 3.0 * nf.slope_se);
    CHECK(nf.slope_se > 0.0);
    CHECK(nf.residual_rms == doctest::Approx(0.1).epsilon(0.1));

    CHECK_THROWS_AS(linear_fit({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), std::invalid_argument);
}

TEST_CASE("correlation pins the scale-free association")
{
    std::vector<double> x, y_up, y_down;
    for (int i = 0; i < 50; ++i) {
        x.push_back(static_cast<double>(i));
        y_up.push_back(2.0 * static_cast<double>(i) + 5.0);
        y_down.push_back(-static_cast<double>(i) + 1.0);
    }
    CHECK(correlation(x, y_up) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(correlation(x, y_down) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(correlation(x, std::vector<double>(50, 7.0)), std::invalid_argument);
}
