#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "phaselink/control/clock.hpp"
#include "phaselink/control/dds.hpp"
#include "phaselink/control/iir.hpp"
#include "phaselink/control/pid.hpp"
#include "phaselink/control/resync.hpp"
#include "phaselink/control/trigger.hpp"
#include "phaselink/model/rng.hpp"
#include "phaselink/sim/experiment.hpp"

using namespace phaselink;

TEST_CASE("one-pole lowpass matches the analog rc step response")
{
    const double fs = 1000.0, fc = 5.0;
    OnePoleLowpass lp(fc, fs);
    CHECK(lp.alpha() == doctest::Approx(1.0 - std::exp(-2.0 * std::numbers::pi * fc / fs)).epsilon(1e-15));

    double expect = 0.0;
    for (int k = 1; k <= 2000; ++k) {
        double y = lp.step(1.0);
        expect = 1.0 - std::pow(1.0 - lp.alpha(), k);
        CHECK(std::abs(y - expect) < 1e-12);
    }
    CHECK(std::abs(lp.value() - 1.0) < 1e-9); // settles to dc gain one
}

TEST_CASE("pid terms accumulate as configured")
{
    PidConfig cfg;
    cfg.kp = 3.0;
    cfg.ki = 2.0;
    cfg.kd = 0.0;
    cfg.update_rate_hz = 10.0;
    PidController pid(cfg);

    // dt = 0.1: integrator grows ki*e*dt per step, proportional adds kp*e.
    CHECK(pid.step(1.0) == doctest::Approx(3.0 + 0.2).epsilon(1e-12));
    CHECK(pid.step(1.0) == doctest::Approx(3.0 + 0.4).epsilon(1e-12));
    CHECK(pid.step(0.0) == doctest::Approx(0.4).epsilon(1e-12));

    PidConfig dcfg;
    dcfg.kp = 0.0;
    dcfg.ki = 0.0;
    dcfg.kd = 0.5;
    dcfg.update_rate_hz = 10.0;
    PidController dpid(dcfg);
    CHECK(dpid.step(1.0) == doctest::Approx(0.0)); // no previous sample yet
    CHECK(dpid.step(2.0) == doctest::Approx(0.5 * (2.0 - 1.0) / 0.1).epsilon(1e-12));
}

TEST_CASE("integrator clamping prevents windup past the output limits")
{
    PidConfig cfg;
    cfg.kp = 0.0;
    cfg.ki = 10.0;
    cfg.update_rate_hz = 10.0;
    cfg.output_min = -1.0;
    cfg.output_max = 1.0;
    PidController pid(cfg);

    for (int i = 0; i < 50; ++i)
        CHECK(pid.step(10.0) <= 1.0);
    CHECK(pid.saturated());
    CHECK(pid.integrator() == doctest::Approx(1.0));

    // One small reversal must pull the output straight off the rail.
    double out = pid.step(-0.1);
    CHECK(out < 1.0);
    CHECK(out == doctest::Approx(1.0 - 10.0 * 0.1 * 0.1).epsilon(1e-12));
}

TEST_CASE("velocity-limited loop tracks a ramp with the expected lag")
{
    // Plant: measured error = reference - previous actuation, loop closed at
    // 1 kHz through a 1 Hz prefilter; integral gain sets the ramp lag r/ki.
    PidConfig cfg;
    cfg.kp = 60.0;
    cfg.ki = 1000.0;
    cfg.update_rate_hz = 1000.0;
    PidController pid(cfg);
    OnePoleLowpass pre(1.0, 1000.0);

    const double ramp = 0.5; // units per second
    double u = 0.0;
    double err_sum = 0.0;
    int err_count = 0;
    for (int k = 0; k < 10000; ++k) {
        double t = static_cast<double>(k) / 1000.0;
        double e = ramp * t - u;
        u = pid.step(pre.step(e));
        if (k >= 9000) {
            err_sum += e;
            ++err_count;
        }
    }
    double lag = err_sum / err_count;
    CHECK(std::abs(lag - ramp / cfg.ki) < 2.0e-4);
}

TEST_CASE("synthesizer tuning-word arithmetic round-trips exactly")
{
    DdsModel dds;
    CHECK(dds.lsb_hz() == 1953125.0 / 1099511627776.0); // 500 MHz / 2^48, exact

    GaussianSource rng(3);
    for (int i = 0; i < 200; ++i) {
        double hz = rng.uniform() * 2.0e8;
        std::uint64_t word = dds_quantize(hz, dds);
        // Half a code, plus the double-rounding slack of forming hz / lsb in
        // floating point (the ratio is ~1e14, so ulps there are ~1e-2 codes).
        CHECK(std::abs(dds_actual_hz(word, dds) - hz) <= 0.51 * dds.lsb_hz());
        CHECK(dds_quantize(dds_actual_hz(word, dds), dds) == word);
    }
    CHECK(dds_quantize(0.0, dds) == 0);
    CHECK_THROWS_AS(dds_quantize(-1.0, dds), std::invalid_argument);
    CHECK_THROWS_AS(dds_actual_hz(1ULL << 48, dds), std::invalid_argument);
}

TEST_CASE("oscillator timescale error integrates the quadratic aging law")
{
    OcxoModel model;
    model.fractional_offset = 1.0e-9;
    model.drift_per_s = 2.0e-13;
    OcxoClock clock(model);

    for (int i = 0; i < 100; ++i)
        clock.advance(1.0);
    double expect = 1.0e-9 * 100.0 + 0.5 * 2.0e-13 * 100.0 * 100.0;
    CHECK(clock.offset() == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(clock.advance(0.0), std::invalid_argument);
}

TEST_CASE("resync snaps the timescale and can null the frequency estimate")
{
    OcxoModel model;
    model.fractional_offset = 1.0e-9;
    model.drift_per_s = 0.0;
    OcxoClock clock(model);
    for (int i = 0; i < 100; ++i)
        clock.advance(1.0);

    clock.resync(2.0e-6, false);
    CHECK(clock.offset() == doctest::Approx(2.0e-6).epsilon(1e-12));

    // With tune adjustment the mean fractional error measured between events
    // cancels the constant offset, so the error stops growing afterwards.
    for (int i = 0; i < 100; ++i)
        clock.advance(1.0);
    clock.resync(0.0, true);
    for (int i = 0; i < 100; ++i)
        clock.advance(1.0);
    CHECK(std::abs(clock.offset()) < 1e-12);
}

TEST_CASE("edge scan reports the first grid sample past the crossing")
{
    std::vector<double> rise = {0.0, 0.1, 0.2, 0.6, 0.9};
    auto hit = detect_edge(rise, 0.4, true, 1);
    REQUIRE(hit.has_value());
    CHECK(*hit == 3);
    CHECK(!detect_edge(rise, 0.95, true, 1).has_value());
    CHECK(!detect_edge(rise, 0.4, true, 4).has_value());

    std::vector<double> fall = {1.0, 0.8, 0.3, 0.2};
    auto fhit = detect_edge(fall, 0.4, false, 1);
    REQUIRE(fhit.has_value());
    CHECK(*fhit == 2);

    PhaseIncrementStream stream;
    stream.amplitudes = {0.0, 0.9, 0.0, 0.0, 0.9, 0.9};
    stream.increments.assign(stream.amplitudes.size(), 0.0);
    stream.valid_from = 3;
    TriggerConfig cfg;
    auto shit = detect_trigger(stream, cfg);
    REQUIRE(shit.has_value());
    CHECK(*shit == 4); // the edge inside the settling region is skipped
}

TEST_CASE("check-grid quantization delays the detection by under one period")
{
    const double rate = 200.0e3;
    const double T = 1.0 / rate;
    GaussianSource rng(606);
    double sum = 0.0, sum2 = 0.0;
    const int trials = 4000;
    for (int n = 0; n < trials; ++n) {
        double u = rng.uniform();
        double t_step = (3.0 + u) * T;
        std::vector<double> series(16);
        for (int k = 0; k < 16; ++k)
            series[k] = (static_cast<double>(k) * T >= t_step) ? 1.0 : 0.0;
        auto hit = detect_edge(series, 0.4, true, 1);
        REQUIRE(hit.has_value());
        double latency = static_cast<double>(*hit) * T - t_step;
        CHECK(latency >= 0.0);
        CHECK(latency <= T);
        sum += latency;
        sum2 += latency * latency;
    }
    double mean = sum / trials;
    double sd = std::sqrt(sum2 / trials - mean * mean);
    CHECK(std::abs(mean - T / 2.0) < 0.05 * T);
    CHECK(std::abs(sd - T / std::sqrt(12.0)) < 0.06 * T);
}

TEST_CASE("resync interval balances trigger noise against quadratic drift")
{
    SyncPolicy policy;
    policy.sigma_sync_s = 3.0e-6;
    policy.interval_cap_s = 10000.0;
    CHECK(schedule_resync_interval(policy, 2.0e-13) == doctest::Approx(std::sqrt(2.0 * 3.0e-6 / 2.0e-13)).epsilon(1e-12));
    CHECK(schedule_resync_interval(policy, 0.0) == 10000.0);
    policy.interval_cap_s = 3600.0;
    CHECK(schedule_resync_interval(policy, 2.0e-13) == 3600.0); // 5477 s, capped
}

TEST_CASE("paired start trials carry the drawn jitter with the expected spread")
{
    SyncPolicy policy;
    auto offsets = trigger_offset_trials(policy, 99, 3000);
    REQUIRE(offsets.size() == 3000);
    const double T = 1.0 / policy.check_rate_hz;
    double sum = 0.0, sum2 = 0.0;
    for (double d : offsets) {
        CHECK(std::abs(d) <= T);
        sum += d;
    }
    double mean = sum / 3000.0;
    for (double d : offsets)
        sum2 += (d - mean) * (d - mean);
    double sd = std::sqrt(sum2 / 3000.0);
    CHECK(std::abs(mean) < 0.1e-6);
    CHECK(std::abs(sd - T / std::sqrt(3.0)) < 0.15e-6);
}
