#pragma once

#include <cstdint>
#include <vector>

#include "phaselink/control/dds.hpp"
#include "phaselink/control/pid.hpp"
#include "phaselink/control/resync.hpp"
#include "phaselink/dsp/filter_design.hpp"
#include "phaselink/model/link.hpp"
#include "phaselink/sim/board.hpp"

namespace phaselink {

enum class BoardMode {
    direct, // photodiode deviations enter the reduced-rate chain directly
    rf      // full beat synthesis, converter model and demodulation per board
};

/**
 * One simulated two-board run. Each board arms on its own photodiode, waits
 * out the configured dwell plus start latency, then records for duration_s.
 * Light reaches the two photodiodes staggered by the propagation delay, so
 * board 2 starts earlier in true time; the recorded streams keep their
 * acquisition timestamps and alignment happens afterwards.
 *
 * With drift_correction on (heterodyne only), board 2 closes a loop from its
 * prefiltered beat deviation through the PID onto the steerable offset
 * oscillator, updated at the loop rate and quantized to the synthesizer grid.
 */
struct ExperimentConfig {
    LinkScenario scenario;
    DemodConfig demod;
    PidConfig pid;
    DdsModel dds;
    SyncPolicy sync;
    bool drift_correction = false;
    double duration_s = 10.0;
    double dwell_s = 2.0e-3; // arm-to-start settle wait
    bool jitter_enabled = true;
    bool align_at_intermediate = false;
    bool include_truth = true;
    BoardMode mode = BoardMode::direct;
    BoardConfig board; // rf-mode front end; demod member is overridden
    std::uint64_t seed = 1;

    void validate() const;
};

/**
 * Aligned pair of output-rate beat-deviation records plus the loop actuation
 * record and (for simulated runs) the truth processes on the same axis.
 *
 * dnu2 has been advanced by the integer part of the propagation stagger at the
 * chosen alignment stage; residual_misalignment_s is what remains (sub-sample
 * rounding plus the drawn start jitter). start_offset_s is the raw start-time
 * stagger minus the deterministic propagation part, i.e. the jitter realized
 * in this run.
 */
struct AlignedAcquisition {
    std::vector<double> dnu1; // Hz at `rate`
    std::vector<double> dnu2;
    std::vector<double> amp1; // volts, lowpassed beat amplitude
    std::vector<double> amp2;
    std::vector<double> f_drift_record; // steered-oscillator Hz deviation, viewed through the output stage
    std::vector<double> truth_eta;
    std::vector<double> truth_laser_rel;
    double rate = 0.0;
    double tau_s = 0.0;
    LinkScheme scheme = LinkScheme::self_heterodyne;
    double start_offset_s = 0.0;
    double residual_misalignment_s = 0.0;
    std::int64_t valid_from = 0;
    std::uint16_t config_id = 0;
};

AlignedAcquisition run_two_board_experiment(const ExperimentConfig& config);

/**
 * Repeated one-shot synchronization trials: a shared step lands at a random
 * phase of the check grid, both channels detect it with the deterministic edge
 * scan, and the reported start-time difference carries the drawn pair jitter.
 * Returns start1 - start2 in seconds for each trial.
 */
std::vector<double> trigger_offset_trials(const SyncPolicy& sync, std::uint64_t seed, int trials);

} // namespace phaselink
