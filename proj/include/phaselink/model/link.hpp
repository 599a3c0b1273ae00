#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phaselink/model/noise.hpp"

namespace phaselink {

enum class LinkScheme {
    self_heterodyne, // each site beats its own light against its round trip
    heterodyne       // each site beats its light against the remote arrival
};

/**
 * Physical description of the two-site fiber experiment: one-way light travel
 * time, the two laser fluctuation processes rho_1 and rho_2, the common fiber
 * process eta, and the direction asymmetry d = eta_12 - eta_21. Frequencies of
 * the two offset oscillators are carried for bookkeeping; their slow command
 * changes enter through the drift series at simulation time.
 */
struct LinkScenario {
    LinkScheme scheme = LinkScheme::self_heterodyne;
    double delay_s = 180.0e-6;
    double span_km = 36.0;
    double offset_lo_hz = 40.0e6; // fixed offset mixer near site 1
    double drift_lo_hz = 40.0e6;  // steerable offset mixer at site 2, nominal
    NoiseSpec laser1;
    NoiseSpec laser2;
    NoiseSpec fiber_common;
    NoiseSpec fiber_differential;
};

/**
 * Photodiode beat-deviation records and the matching truth processes, all on
 * one true-time grid. delay_samples is the one-way travel time in samples.
 */
struct LinkSignals {
    std::vector<double> pd1;
    std::vector<double> pd2;
    std::vector<double> eta_truth;      // common fiber process at detection time
    std::vector<double> laser_rel_truth; // rho_2 - rho_1 at detection time
    double rate = 0.0;
    int delay_samples = 0;
};

/**
 * Streaming generator for the link records, integer-sample delay model.
 *
 * Laser terms keep their full physical delays (round trip 2*tau in the
 * self-heterodyne beat, one way tau across sites). The common fiber process
 * enters every traversal at detection time, so with only common noise the two
 * records are identical functions of true time; the direction asymmetry keeps
 * per-leg end-time sampling. The steerable-offset deviation series enters
 * site 1 delayed by tau and site 2 directly, matching where that mixer sits.
 */
class LinkSimulator {
  public:
    LinkSimulator(const LinkScenario& scenario, double rate);

    // Generates the next n samples; f_drift_dev (Hz deviation from nominal)
    // must be empty (treated as zero) or hold n entries.
    LinkSignals step(std::size_t n, std::span<const double> f_drift_dev = {});

    int delay_samples() const { return delay_; }
    double rate() const { return rate_; }

  private:
    LinkScenario scenario_;
    double rate_ = 0.0;
    int delay_ = 0;
    PowerLawNoiseGenerator laser1_, laser2_, eta_, diff_;
    // Rolling histories long enough to look back 2*tau.
    std::vector<double> h_laser1_, h_laser2_, h_eta_, h_diff_, h_fd_;
    std::int64_t produced_ = 0;
};

// One-shot convenience covering n samples with a fixed drift deviation.
LinkSignals simulate_link(const LinkScenario& scenario, std::size_t n, double rate);

} // namespace phaselink
