#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "phaselink/analysis/adev.hpp"
#include "phaselink/analysis/fit.hpp"
#include "phaselink/analysis/psd.hpp"
#include "phaselink/model/adc.hpp"
#include "phaselink/model/beatnote.hpp"
#include "phaselink/model/noise.hpp"
#include "phaselink/model/rf_chain.hpp"
#include "phaselink/model/rng.hpp"

using namespace phaselink;

namespace {

double db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

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

TEST_CASE("gaussian source is seed-deterministic with unit variance")
{
    GaussianSource a(12345), b(12345), c(54321);
    bool any_differs = false;
    for (int i = 0; i < 8; ++i) {
        double va = a.next();
        CHECK(va == b.next());
        if (va != c.next())
            any_differs = true;
    }
    CHECK(any_differs);

    GaussianSource g(7);
    const std::size_t n = 200000;
    std::vector<double> x(n);
    for (double& v : x)
        v = g.next();
    double m = 0.0;
    for (double v : x)
        m += v;
    m /= static_cast<double>(n);
    CHECK(std::abs(m) < 0.01);
    CHECK(std::abs(variance(x) - 1.0) < 0.02);

    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("white frequency noise lands on its target spectral level")
{
    NoiseSpec spec;
    spec.white_freq_level = 4.0;
    spec.seed = 21;
    const double rate = 8192.0;
    auto x = generate_power_law_noise(spec, 1 << 18, rate);

    // One-sided level S = 4 in-band; total power level * rate / 2.
    auto est = welch_psd(x, rate, 4096);
    CHECK(std::abs(db(band_average(est, 100.0, 3000.0) / 4.0)) < 1.0);
    CHECK(std::abs(psd_integral(est) / (4.0 * rate / 2.0) - 1.0) < 0.05);
    CHECK(std::abs(variance(x) / (4.0 * rate / 2.0) - 1.0) < 0.05);
}

TEST_CASE("white phase noise differentiates to an f-squared frequency spectrum")
{
    NoiseSpec spec;
    spec.white_phase_level = 1.0e-6;
    spec.seed = 22;
    const double rate = 8192.0;
    auto x = generate_power_law_noise(spec, 1 << 18, rate);
    auto est = welch_psd(x, rate, 4096);

    auto model = [&](double f) {
        double s = 2.0 * std::sin(std::numbers::pi * f / rate);
        return spec.white_phase_level * s * s * (rate / (2.0 * std::numbers::pi)) * (rate / (2.0 * std::numbers::pi));
    };
    CHECK(std::abs(db(band_average(est, 950.0, 1050.0) / model(1000.0))) < 1.0);
    double ratio = band_average(est, 1950.0, 2050.0) / band_average(est, 450.0, 550.0);
    CHECK(std::abs(db(ratio / (model(2000.0) / model(500.0)))) < 1.0);
}

TEST_CASE("random-walk frequency noise shows the square-root-of-tau deviation growth")
{
    NoiseSpec spec;
    spec.random_walk_freq_level = 1.0e-3;
    spec.seed = 23;
    const double rate = 1000.0;
    auto x = generate_power_law_noise(spec, 200000, rate);

    auto points = overlapping_adev(x, rate, decade_taus(0.01, 5.0));
    std::vector<double> lt, la;
    for (const auto& p : points) {
        REQUIRE(p.valid);
        lt.push_back(std::log10(p.tau_s));
        la.push_back(std::log10(p.adev));
    }
    auto fit = linear_fit(lt, la);
    CHECK(std::abs(fit.slope - 0.5) < 0.1);
}

TEST_CASE("pure drift synthesizes an exact ramp")
{
    NoiseSpec spec;
    spec.drift_rate = 2.0;
    auto x = generate_power_law_noise(spec, 64, 100.0);
    for (std::size_t k = 0; k < x.size(); ++k)
        CHECK(x[k] == doctest::Approx(2.0 * static_cast<double>(k) / 100.0).epsilon(1e-12));
}

TEST_CASE("noise generation is chunking-invariant")
{
    NoiseSpec spec;
    spec.white_freq_level = 2.0;
    spec.white_phase_level = 1.0e-7;
    spec.random_walk_freq_level = 1.0e-4;
    spec.drift_rate = 0.3;
    spec.bandwidth_hz = 500.0;
    spec.seed = 24;

    const std::size_t n = 150000;
    auto oneshot = generate_power_law_noise(spec, n, 4096.0);

    PowerLawNoiseGenerator gen(spec, 4096.0);
    std::vector<double> chunked;
    while (chunked.size() < n) {
        std::size_t take = std::min<std::size_t>(717, n - chunked.size());
        gen.generate(take, chunked);
    }
    REQUIRE(chunked.size() == oneshot.size());
    for (std::size_t i = 0; i < n; ++i)
        CHECK(chunked[i] == oneshot[i]);
}

TEST_CASE("bandwidth limit rolls the white branch off with a single pole")
{
    NoiseSpec spec;
    spec.white_freq_level = 1.0;
    spec.bandwidth_hz = 200.0;
    spec.seed = 25;
    const double rate = 8192.0;
    auto x = generate_power_law_noise(spec, 1 << 18, rate);
    auto est = welch_psd(x, rate, 8192);

    double low = band_average(est, 10.0, 40.0);
    double at_corner = band_average(est, 190.0, 210.0);
    double high = band_average(est, 1900.0, 2100.0);
    CHECK(std::abs(db(low / 1.0)) < 1.0);         // dc gain one
    CHECK(std::abs(db(at_corner / 0.5)) < 1.0);   // half power at the pole
    CHECK(db(high / 1.0) < -17.0);                // ~-20 dB a decade out
}

TEST_CASE("quarter-rate beat tone repeats its four-sample pattern exactly")
{
    ToneSpec tone{1.0, 1.0e6, 0.7};
    auto x = synthesize_beatnote(tone, {}, 4096, 4.0e6);
    for (std::size_t k = 0; k < x.size(); ++k)
        CHECK(x[k] == x[k % 4]);
    CHECK(x[0] == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
}

TEST_CASE("constant frequency fluctuation advances the beat phase linearly")
{
    ToneSpec tone{0.5, 1.0e6, 0.1};
    std::vector<double> dev(8192, 250.0);
    auto x = synthesize_beatnote(tone, dev, dev.size(), 4.0e6);
    // The fluctuation integral includes the current sample, so sample k
    // carries k+1 accumulated deviation steps.
    for (std::size_t k = 0; k < x.size(); ++k) {
        double arg = std::numbers::pi / 2.0 * static_cast<double>(k) + 0.1 +
                     2.0 * std::numbers::pi * 250.0 * static_cast<double>(k + 1) / 4.0e6;
        CHECK(std::abs(x[k] - 0.5 * std::sin(arg)) < 1e-9);
    }
}

TEST_CASE("converter codes, rails and reconstruction behave to the data sheet")
{
    AdcModel model;
    model.bits = 14;
    model.enob = 14.0; // no added noise
    model.full_scale = 2.5;
    CHECK(model.noise_sigma() == 0.0);

    GaussianSource noise(1);
    double lsb = model.lsb();
    std::vector<double> in = {0.0, lsb, 7.0 * lsb, 2.5, 2.6, -0.2};
    auto res = adc_quantize(in, model, noise);
    CHECK(res.codes[0] == 0);
    CHECK(res.codes[1] == 1);
    CHECK(res.codes[2] == 7);
    CHECK(res.codes[3] == 16383);
    CHECK(res.codes[4] == 16383); // clipped high
    CHECK(res.codes[5] == 0);     // clipped low
    CHECK(res.saturated == 2);

    auto back = codes_to_volts(res.codes, model);
    CHECK(back[2] == doctest::Approx(7.0 * lsb - 1.25).epsilon(1e-12));

    auto digi = digitize(std::vector<double>{0.3, 0.3, 0.3}, model);
    CHECK(digi.saturated == 0);
    for (double v : digi.volts)
        CHECK(std::abs(v - 0.3) <= 0.5 * lsb + 1e-15);
}

TEST_CASE("effective-bits setting reproduces the implied total noise")
{
    AdcModel model;
    model.bits = 14;
    model.enob = 12.0;
    model.seed = 9;
    std::vector<double> flat(200000, 0.0); // mid-scale after conditioning
    auto digi = digitize(flat, model);
    double sigma = std::sqrt(variance(digi.volts));
    double target = model.full_scale / (std::exp2(12.0) * std::sqrt(12.0));
    CHECK(std::abs(sigma / target - 1.0) < 0.03);
}

TEST_CASE("front-end mix maps beats to the sampled image with the right sign")
{
    RfChain chain; // 41 MHz oscillator, 1.9 MHz lowpass
    auto below = mix_downconvert(40.0e6, chain);
    CHECK(below.carrier_hz == doctest::Approx(1.0e6));
    CHECK(below.sideband_sign == -1);
    CHECK(!below.degenerate);

    auto above = mix_downconvert(42.0e6, chain);
    CHECK(above.carrier_hz == doctest::Approx(1.0e6));
    CHECK(above.sideband_sign == 1);

    CHECK(mix_downconvert(41.0e6, chain).degenerate);
    CHECK_THROWS_AS(mix_downconvert(45.0e6, chain), std::invalid_argument);

    CarrierSignal sig;
    sig.carrier_hz = 40.0e6;
    sig.fluctuations = {3.0, -1.0};
    sig.rate = 1.0e5;
    auto mixed = mix_downconvert(sig, chain);
    CHECK(mixed.carrier_hz == doctest::Approx(1.0e6));
    CHECK(mixed.fluctuations[0] == doctest::Approx(-3.0));
    CHECK(mixed.fluctuations[1] == doctest::Approx(1.0));
}
