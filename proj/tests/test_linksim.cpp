#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "phaselink/analysis/fit.hpp"
#include "phaselink/analysis/psd.hpp"
#include "phaselink/model/link.hpp"
#include "phaselink/sim/combine.hpp"
#include "phaselink/sim/experiment.hpp"

using namespace phaselink;

namespace {

LinkScenario silent_scenario(LinkScheme scheme)
{
    LinkScenario sc;
    sc.scheme = scheme;
    sc.laser1.seed = 11;
    sc.laser2.seed = 12;
    sc.fiber_common.seed = 13;
    sc.fiber_differential.seed = 14;
    return sc;
}

std::vector<double> settled(const std::vector<double>& v, std::int64_t from)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.end()};
}

double db(double r)
{
    return 10.0 * std::log10(r);
}

} // namespace

TEST_CASE("link delay must land on the sample grid")
{
    LinkScenario sc = silent_scenario(LinkScheme::self_heterodyne);
    LinkSimulator ok(sc, 1.0e5);
    CHECK(ok.delay_samples() == 18);
    CHECK_THROWS_AS(LinkSimulator(sc, 1.0e3), std::invalid_argument); // 0.18 samples
}

TEST_CASE("common fiber noise enters both records identically")
{
    for (auto scheme : {LinkScheme::self_heterodyne, LinkScheme::heterodyne}) {
        LinkScenario sc = silent_scenario(scheme);
        sc.fiber_common.white_freq_level = 50.0;
        auto sig = simulate_link(sc, 20000, 1.0e5);
        REQUIRE(sig.pd1.size() == 20000);
        const double gain = scheme == LinkScheme::self_heterodyne ? 2.0 : 1.0;
        for (std::size_t k = 0; k < sig.pd1.size(); ++k) {
            CHECK(sig.pd1[k] == sig.pd2[k]);
            CHECK(sig.pd1[k] == gain * sig.eta_truth[k]);
        }
    }
}

TEST_CASE("self-interference shapes laser noise with the round-trip delay filter")
{
    LinkScenario sc = silent_scenario(LinkScheme::self_heterodyne);
    sc.laser1.white_freq_level = 1.0;
    const double rate = 1.0e5;
    auto sig = simulate_link(sc, 400000, rate);

    // pd1 = rho1(t - 2*tau) - rho1(t): one-sided spectrum 4*sin^2(2*pi*f*tau)*S.
    auto est = welch_psd(sig.pd1, rate, 8192);
    auto model = [&](double f) {
        double s = std::sin(2.0 * std::numbers::pi * f * sc.delay_s);
        return 4.0 * s * s * 1.0;
    };
    double peak_f = 1.0 / (4.0 * sc.delay_s); // first maximum, ~1.39 kHz
    CHECK(std::abs(db(band_average(est, peak_f - 40.0, peak_f + 40.0) / model(peak_f))) < 1.0);
    CHECK(std::abs(db(band_average(est, 160.0, 240.0) / model(200.0))) < 1.5);
}

TEST_CASE("steerable-offset deviations enter the two records where the mixer sits")
{
    LinkScenario sc = silent_scenario(LinkScheme::heterodyne);
    LinkSimulator link(sc, 1.0e5);
    const int m = link.delay_samples();
    std::vector<double> fd(4000, 5.0);
    auto sig = link.step(fd.size(), fd);

    for (std::size_t k = 0; k < sig.pd1.size(); ++k) {
        double expect1 = static_cast<std::int64_t>(k) >= m ? 5.0 : 0.0; // crosses the span first
        CHECK(sig.pd1[k] == expect1);
        CHECK(sig.pd2[k] == -5.0);
    }

    // The self-interference scheme never sees the remote offset oscillator.
    LinkScenario ssc = silent_scenario(LinkScheme::self_heterodyne);
    LinkSimulator slink(ssc, 1.0e5);
    auto ssig = slink.step(fd.size(), fd);
    for (double v : ssig.pd1)
        CHECK(v == 0.0);
    for (double v : ssig.pd2)
        CHECK(v == 0.0);
}

TEST_CASE("direction asymmetry is antisymmetric between the records")
{
    for (auto scheme : {LinkScheme::self_heterodyne, LinkScheme::heterodyne}) {
        LinkScenario sc = silent_scenario(scheme);
        sc.fiber_differential.white_freq_level = 3.0;
        auto sig = simulate_link(sc, 20000, 1.0e5);
        bool any_nonzero = false;
        for (std::size_t k = 0; k < sig.pd1.size(); ++k) {
            CHECK(sig.pd1[k] == -sig.pd2[k]);
            any_nonzero = any_nonzero || sig.pd1[k] != 0.0;
            CHECK(sig.eta_truth[k] == 0.0);
        }
        CHECK(any_nonzero);
    }
}

TEST_CASE("truth channels track the generating processes")
{
    LinkScenario sc = silent_scenario(LinkScheme::heterodyne);
    sc.laser2.white_freq_level = 0.5;
    auto sig = simulate_link(sc, 20000, 1.0e5);
    bool any_nonzero = false;
    for (double v : sig.laser_rel_truth)
        any_nonzero = any_nonzero || v != 0.0;
    CHECK(any_nonzero);
    for (double v : sig.eta_truth)
        CHECK(v == 0.0);
}

TEST_CASE("aligned records of pure common noise are bit-identical")
{
    ExperimentConfig cfg;
    cfg.scenario = silent_scenario(LinkScheme::self_heterodyne);
    cfg.scenario.fiber_common.white_freq_level = 100.0;
    cfg.duration_s = 2.0;
    cfg.jitter_enabled = false;
    cfg.align_at_intermediate = true;
    cfg.seed = 4;

    auto acq = run_two_board_experiment(cfg);
    REQUIRE(acq.dnu1.size() == acq.dnu2.size());
    REQUIRE(acq.dnu1.size() >= 1990);
    CHECK(acq.residual_misalignment_s == 0.0);
    CHECK(std::abs(acq.start_offset_s) < 1e-15);
    for (std::size_t k = 0; k < acq.dnu1.size(); ++k)
        CHECK(acq.dnu1[k] == acq.dnu2[k]);

    // At the output stage the 180 us stagger is below half a sample, so the
    // advance is zero and the whole delay remains as residual misalignment.
    ExperimentConfig ocfg = cfg;
    ocfg.align_at_intermediate = false;
    auto oacq = run_two_board_experiment(ocfg);
    CHECK(oacq.residual_misalignment_s == doctest::Approx(cfg.scenario.delay_s).epsilon(1e-9));
}

TEST_CASE("fiber estimate follows the common process in the self scheme")
{
    ExperimentConfig cfg;
    cfg.scenario = silent_scenario(LinkScheme::self_heterodyne);
    cfg.scenario.fiber_common.white_freq_level = 100.0;
    cfg.duration_s = 4.0;
    cfg.seed = 5;
    auto acq = run_two_board_experiment(cfg);

    auto res = combine_self_heterodyne(acq);
    REQUIRE(res.fiber_estimate.size() == acq.dnu1.size());
    for (std::size_t k = 0; k < res.fiber_estimate.size(); ++k) {
        CHECK(res.fiber_estimate[k] == 0.5 * acq.dnu1[k]);
        CHECK(res.residual[k] == acq.dnu1[k] - acq.dnu2[k]);
    }
    double c = correlation(settled(res.fiber_estimate, acq.valid_from), settled(acq.truth_eta, acq.valid_from));
    CHECK(c > 0.99);

    CHECK_THROWS_AS(combine_heterodyne(acq), std::invalid_argument);
}

TEST_CASE("correction loop absorbs a laser frequency ramp")
{
    ExperimentConfig cfg;
    cfg.scenario = silent_scenario(LinkScheme::heterodyne);
    cfg.scenario.laser1.drift_rate = 0.5;
    cfg.drift_correction = true;
    cfg.pid.kp = 60.0;
    cfg.pid.ki = 1000.0;
    cfg.pid.prefilter_cutoff_hz = 1.0;
    cfg.duration_s = 10.0;
    cfg.seed = 6;
    auto acq = run_two_board_experiment(cfg);

    // Steady state: the steered oscillator carries the ramp, the record mean
    // sits at the velocity-limited lag.
    std::size_t n = acq.dnu2.size();
    double tail = 0.0;
    for (std::size_t k = n - 1000; k < n; ++k)
        tail += acq.dnu2[k];
    tail /= 1000.0;
    CHECK(std::abs(tail) < 1.0e-3);
    CHECK(acq.f_drift_record.back() == doctest::Approx(0.5 * 10.0).epsilon(0.01));

    auto het = combine_heterodyne(acq);
    for (std::size_t k = 0; k < het.fiber_estimate.size(); ++k) {
        CHECK(het.fiber_estimate[k] == doctest::Approx(0.5 * (acq.dnu1[k] + acq.dnu2[k])).epsilon(1e-12));
        double expect = 0.5 * (acq.dnu1[k] - acq.dnu2[k] - 2.0 * acq.f_drift_record[k]);
        CHECK(het.laser_estimate[k] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS_AS(combine_self_heterodyne(acq), std::invalid_argument);

    // The correction loop is rejected outright on the self scheme.
    ExperimentConfig bad = cfg;
    bad.scenario.scheme = LinkScheme::self_heterodyne;
    CHECK_THROWS_AS(run_two_board_experiment(bad), std::invalid_argument);
}

TEST_CASE("repeat runs of one configuration are bit-identical")
{
    ExperimentConfig cfg;
    cfg.scenario = silent_scenario(LinkScheme::self_heterodyne);
    cfg.scenario.fiber_common.white_freq_level = 40.0;
    cfg.scenario.laser1.white_freq_level = 0.3;
    cfg.scenario.laser2.white_freq_level = 0.3;
    cfg.duration_s = 1.0;
    cfg.seed = 7;

    auto a = run_two_board_experiment(cfg);
    auto b = run_two_board_experiment(cfg);
    REQUIRE(a.dnu1.size() == b.dnu1.size());
    for (std::size_t k = 0; k < a.dnu1.size(); ++k) {
        CHECK(a.dnu1[k] == b.dnu1[k]);
        CHECK(a.dnu2[k] == b.dnu2[k]);
    }
    CHECK(a.start_offset_s == b.start_offset_s);
}

TEST_CASE("full front-end simulation agrees with the direct reduced-rate path")
{
    ExperimentConfig cfg;
    cfg.scenario = silent_scenario(LinkScheme::self_heterodyne);
    cfg.scenario.fiber_common.white_freq_level = 100.0;
    cfg.duration_s = 3.0;
    cfg.jitter_enabled = false;
    cfg.seed = 8;

    auto direct = run_two_board_experiment(cfg);

    ExperimentConfig rcfg = cfg;
    rcfg.mode = BoardMode::rf;
    auto rf = run_two_board_experiment(rcfg);

    REQUIRE(rf.dnu1.size() == direct.dnu1.size());
    std::int64_t from = std::max(rf.valid_from, direct.valid_from);
    double c = correlation(settled(rf.dnu1, from), settled(direct.dnu1, from));
    CHECK(c > 0.99);
}
