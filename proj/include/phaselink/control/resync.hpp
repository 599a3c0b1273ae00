#pragma once

#include <cstdint>

namespace phaselink {

/**
 * Periodic resynchronization policy. The drift-matched interval balances the
 * one-shot trigger uncertainty sigma_sync against quadratic clock drift: the
 * accumulated error D*T^2/2 equals sigma_sync at T = sqrt(2*sigma_sync/D).
 * Deployments cap the interval; drift-free clocks use the cap alone.
 */
struct SyncPolicy {
    double sigma_sync_s = 2.89e-6;
    double interval_cap_s = 3600.0;
    double check_rate_hz = 200.0e3;
    double start_latency_s = 32.0e-6;   // trigger to first sample, fixed
    double resync_latency_s = 110.0e-6; // timescale correction dead time, fixed

    void validate() const;
};

struct SyncState {
    double last_resync_s = 0.0;        // true time of the last event
    double accumulated_offset_s = 0.0; // timescale error right after it
    std::int64_t resync_count = 0;
};

// min(cap, sqrt(2*sigma_sync/drift)); the cap for non-drifting clocks.
double schedule_resync_interval(const SyncPolicy& policy, double drift_per_s);

} // namespace phaselink
