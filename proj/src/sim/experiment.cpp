#include "phaselink/sim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "phaselink/control/iir.hpp"
#include "phaselink/control/trigger.hpp"
#include "phaselink/dsp/decimate.hpp"

namespace phaselink {

void ExperimentConfig::validate() const
{
    demod.validate();
    pid.validate();
    sync.validate();
    if (duration_s <= 0.0)
        throw std::invalid_argument("experiment duration must be positive");
    if (dwell_s < 0.0)
        throw std::invalid_argument("dwell must be non-negative");
    if (drift_correction && scenario.scheme != LinkScheme::heterodyne)
        throw std::invalid_argument("drift correction needs the heterodyne scheme");
    if (drift_correction) {
        double steps = demod.intermediate_rate_hz / pid.update_rate_hz;
        if (steps < 1.0 || steps != std::floor(steps))
            throw std::invalid_argument("loop update rate must divide the intermediate rate");
    }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduced-rate record built straight from photodiode deviations, bypassing the
// RF front end but using the identical output-stage filter.
struct DirectChain {
    OutputDecimator decim;
    PhaseIncrementStream out;
    std::vector<double> inc, amp;
    double rate_in;

    DirectChain(const DemodConfig& config)
        : decim(config), rate_in(config.intermediate_rate_hz)
    {
        out.rate = config.output_rate_hz;
        out.valid_from = decim.settled_from();
    }

    void feed(std::span<const double> hz)
    {
        inc.resize(hz.size());
        for (std::size_t i = 0; i < hz.size(); ++i)
            inc[i] = hz[i] * kTwoPi / rate_in;
        amp.assign(hz.size(), 1.0);
        decim.process(inc, amp, out);
    }
};

// Per-board feeder that skips samples before the board's start index and stops
// after the record is full.
struct RecordWindow {
    std::int64_t start = 0;
    std::int64_t length = 0;
    std::int64_t fed = 0;

    // Maps the chunk covering global [c0, c0 + n) to the in-chunk slice this
    // record still wants; empty when nothing overlaps.
    std::span<const double> slice(std::span<const double> chunk, std::int64_t c0) const
    {
        std::int64_t lo = std::max<std::int64_t>(c0, start + fed);
        std::int64_t hi = std::min<std::int64_t>(c0 + static_cast<std::int64_t>(chunk.size()), start + length);
        if (hi <= lo)
            return {};
        return chunk.subspan(static_cast<std::size_t>(lo - c0), static_cast<std::size_t>(hi - lo));
    }
};

} // namespace

AlignedAcquisition run_two_board_experiment(const ExperimentConfig& config)
{
    config.validate();
    const double ri = config.demod.intermediate_rate_hz;
    const double ro = config.demod.output_rate_hz;
    const std::int64_t ratio = config.demod.output_decimation();
    const bool self_het = config.scenario.scheme == LinkScheme::self_heterodyne;

    LinkSimulator link(config.scenario, ri);
    const std::int64_t m = link.delay_samples();

    // Start instants: propagation stagger, dwell, fixed start latency, plus the
    // drawn pair jitter split evenly between the boards.
    const double tau = config.scenario.delay_s;
    const double prop1 = self_het ? 2.0 * tau : tau;
    const double prop2 = self_het ? tau : 0.0;
    GaussianSource rng(derive_seed(config.seed, 0x2b0a2dULL));
    double delta = 0.0;
    if (config.jitter_enabled)
        delta = (2.0 * rng.uniform() - 1.0) / config.sync.check_rate_hz;
    const double t1 = prop1 + config.dwell_s + config.sync.start_latency_s + 0.5 * delta;
    const double t2 = prop2 + config.dwell_s + config.sync.start_latency_s - 0.5 * delta;
    const std::int64_t s1 = std::llround(t1 * ri);
    const std::int64_t s2 = std::llround(t2 * ri);

    // Alignment advance for the board 2 record, in intermediate samples.
    const std::int64_t shift = config.align_at_intermediate
                                   ? m
                                   : static_cast<std::int64_t>(std::llround(tau * ro)) * ratio;

    std::int64_t n_int = std::llround(config.duration_s * ri);
    n_int = ((n_int + ratio - 1) / ratio) * ratio;

    RecordWindow rec1{s1, n_int, 0};
    RecordWindow rec2{s2 + shift, n_int, 0};
    RecordWindow rec_truth{s1, n_int, 0};

    // Output-stage chains. In rf mode the records run through full synthesis,
    // conversion and demodulation; truth channels always use the direct stage.
    std::unique_ptr<DirectChain> d1, d2;
    std::unique_ptr<BoardChannel> b1, b2;
    if (config.mode == BoardMode::direct) {
        d1 = std::make_unique<DirectChain>(config.demod);
        d2 = std::make_unique<DirectChain>(config.demod);
    } else {
        BoardConfig bc1 = config.board;
        bc1.demod = config.demod;
        bc1.seed = derive_seed(config.seed, 1);
        BoardConfig bc2 = config.board;
        bc2.demod = config.demod;
        bc2.seed = derive_seed(config.seed, 2);
        b1 = std::make_unique<BoardChannel>(bc1);
        b2 = std::make_unique<BoardChannel>(bc2);
    }
    DirectChain truth_eta_chain(config.demod);
    DirectChain truth_lr_chain(config.demod);
    // The actuation record passes through the same output-stage filter as the
    // measured channels, so combining them cancels the applied offset exactly.
    DirectChain fd_chain(config.demod);

    // Drift-correction loop state. The loop prefilters the deviation series
    // feeding the board 2 record (in rf mode that skips the measurement chain,
    // whose group delay is far inside the loop time constants) and acts on the
    // steerable offset one update later.
    const bool loop_on = config.drift_correction;
    const std::int64_t chunk =
        loop_on ? static_cast<std::int64_t>(ri / config.pid.update_rate_hz) : 65536;
    OnePoleLowpass prefilter(config.pid.prefilter_cutoff_hz, ri);
    PidController pid(config.pid);
    double fd_dev = 0.0;   // current deviation applied to the steerable offset, Hz
    bool loop_active = false;
    std::int64_t loop_fed = 0; // intermediate samples seen by the prefilter

    std::vector<double> fd_chunk(static_cast<std::size_t>(chunk), 0.0);
    std::vector<double> fd_slice;

    const std::int64_t horizon = std::max(rec1.start, std::max(rec2.start, rec_truth.start)) + n_int;
    std::int64_t c0 = 0;
    while (rec1.fed < n_int || rec2.fed < n_int || rec_truth.fed < n_int) {
        if (c0 > horizon + chunk)
            throw std::logic_error("experiment loop overran its horizon");
        std::fill(fd_chunk.begin(), fd_chunk.end(), fd_dev);
        LinkSignals sig = link.step(static_cast<std::size_t>(chunk), fd_chunk);

        auto s1v = rec1.slice(sig.pd1, c0);
        auto s2v = rec2.slice(sig.pd2, c0);
        if (config.mode == BoardMode::direct) {
            d1->feed(s1v);
            d2->feed(s2v);
        } else {
            b1->push_deviation(s1v);
            b2->push_deviation(s2v);
        }

        // Oscillator deviation record, windowed like the board 2 channel it
        // steers (the offset is held constant across each loop chunk).
        fd_slice.assign(s2v.size(), fd_dev);
        fd_chain.feed(fd_slice);

        rec1.fed += static_cast<std::int64_t>(s1v.size());
        rec2.fed += static_cast<std::int64_t>(s2v.size());

        auto tv = rec_truth.slice(sig.eta_truth, c0);
        auto lv = rec_truth.slice(sig.laser_rel_truth, c0);
        if (config.include_truth) {
            truth_eta_chain.feed(tv);
            truth_lr_chain.feed(lv);
        }
        rec_truth.fed += static_cast<std::int64_t>(tv.size());

        if (loop_on) {
            for (double hz : s2v) {
                prefilter.step(hz);
                ++loop_fed;
                loop_active = true;
            }
            if (loop_active) {
                double cmd = pid.step(prefilter.value());
                double requested = config.scenario.drift_lo_hz + cmd;
                double actual = dds_actual_hz(dds_quantize(requested, config.dds), config.dds);
                fd_dev = actual - config.scenario.drift_lo_hz;
            }
        }
        c0 += chunk;
    }

    AlignedAcquisition acq;
    acq.rate = ro;
    acq.tau_s = tau;
    acq.scheme = config.scenario.scheme;
    acq.config_id = config.demod.config_id;
    acq.start_offset_s = (t1 - t2) - (prop1 - prop2);
    acq.residual_misalignment_s = static_cast<double>(s1 - s2 - shift) / ri;

    const PhaseIncrementStream& o1 = config.mode == BoardMode::direct ? d1->out : b1->output();
    const PhaseIncrementStream& o2 = config.mode == BoardMode::direct ? d2->out : b2->output();
    acq.dnu1 = increments_to_frequency(o1.increments, ro);
    acq.dnu2 = increments_to_frequency(o2.increments, ro);
    acq.amp1 = o1.amplitudes;
    acq.amp2 = o2.amplitudes;
    if (config.include_truth) {
        acq.truth_eta = increments_to_frequency(truth_eta_chain.out.increments, ro);
        acq.truth_laser_rel = increments_to_frequency(truth_lr_chain.out.increments, ro);
    }
    acq.f_drift_record = increments_to_frequency(fd_chain.out.increments, ro);

    acq.valid_from = std::max(o1.valid_from, o2.valid_from);

    std::size_t len = std::min(acq.dnu1.size(), acq.dnu2.size());
    len = std::min(len, acq.f_drift_record.size());
    if (config.include_truth) {
        len = std::min(len, acq.truth_eta.size());
        len = std::min(len, acq.truth_laser_rel.size());
    }
    acq.dnu1.resize(len);
    acq.dnu2.resize(len);
    acq.amp1.resize(len);
    acq.amp2.resize(len);
    acq.f_drift_record.resize(len);
    if (config.include_truth) {
        acq.truth_eta.resize(len);
        acq.truth_laser_rel.resize(len);
    }
    return acq;
}

std::vector<double> trigger_offset_trials(const SyncPolicy& sync, std::uint64_t seed, int trials)
{
    sync.validate();
    if (trials < 1)
        throw std::invalid_argument("at least one trial");
    const double t_check = 1.0 / sync.check_rate_hz;
    GaussianSource rng(derive_seed(seed, 0x7415ULL));
    std::vector<double> offsets;
    offsets.reserve(static_cast<std::size_t>(trials));

    for (int trial = 0; trial < trials; ++trial) {
        // A shared edge lands at a random phase of the check grid; both
        // channels scan the same grid, so the grid quantization cancels and
        // the start stagger is the pair jitter alone.
        double phase = rng.uniform();
        const int k0 = 3;
        double t_step = (k0 + phase) * t_check;
        std::vector<double> series(16, 0.0);
        for (std::size_t i = 0; i < series.size(); ++i)
            series[i] = (static_cast<double>(i) * t_check >= t_step) ? 1.0 : 0.0;
        auto idx1 = detect_edge(series, 0.4, true, 1);
        auto idx2 = detect_edge(series, 0.4, true, 1);
        if (!idx1 || !idx2 || *idx1 != *idx2)
            throw std::logic_error("shared edge must be seen at one grid index");
        double delta = (2.0 * rng.uniform() - 1.0) / sync.check_rate_hz;
        double start1 = static_cast<double>(*idx1) * t_check + sync.start_latency_s + 0.5 * delta;
        double start2 = static_cast<double>(*idx2) * t_check + sync.start_latency_s - 0.5 * delta;
        offsets.push_back(start1 - start2);
    }
    return offsets;
}

} // namespace phaselink
