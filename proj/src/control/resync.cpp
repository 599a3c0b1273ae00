#include "phaselink/control/resync.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phaselink {

void SyncPolicy::validate() const
{
    if (!(sigma_sync_s > 0.0) || !(interval_cap_s > 0.0) || !(check_rate_hz > 0.0))
        throw std::invalid_argument("sync policy scales must be positive");
    if (start_latency_s < 0.0 || resync_latency_s < 0.0)
        throw std::invalid_argument("latencies must be non-negative");
}

double schedule_resync_interval(const SyncPolicy& policy, double drift_per_s)
{
    policy.validate();
    if (drift_per_s < 0.0)
        throw std::invalid_argument("drift magnitude must be non-negative");
    if (drift_per_s == 0.0)
        return policy.interval_cap_s;
    return std::min(policy.interval_cap_s, std::sqrt(2.0 * policy.sigma_sync_s / drift_per_s));
}

} // namespace phaselink
