#include "phaselink/control/clock.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselink {

OcxoClock::OcxoClock(const OcxoModel& model)
    : model_(model), noise_(derive_seed(model.seed, 0x0c10))
{
    if (!(model.nominal_hz > 0.0))
        throw std::invalid_argument("nominal frequency must be positive");
    if (model.white_fm_level < 0.0)
        throw std::invalid_argument("noise level must be non-negative");
}

double OcxoClock::advance(double true_dt)
{
    if (!(true_dt > 0.0))
        throw std::invalid_argument("time must advance forward");
    // Exact integral of (1 + offset + drift*s - tune) over [t, t+dt].
    double local_dt = true_dt * (1.0 + model_.fractional_offset - tune_) +
                      model_.drift_per_s * (true_time_ * true_dt + true_dt * true_dt / 2.0);
    if (model_.white_fm_level > 0.0) {
        double sigma = std::sqrt(model_.white_fm_level / (2.0 * true_dt));
        local_dt += sigma * noise_.next() * true_dt;
    }
    true_time_ += true_dt;
    local_time_ += local_dt;
    return local_dt;
}

void OcxoClock::resync(double jitter_s, bool adjust_tune)
{
    if (adjust_tune) {
        double elapsed = true_time_ - last_resync_true_;
        if (elapsed > 0.0) {
            double drift_est = (offset() - offset_at_resync_) / elapsed;
            tune_ += drift_est;
        }
    }
    local_time_ = true_time_ + jitter_s;
    last_resync_true_ = true_time_;
    offset_at_resync_ = offset();
}

} // namespace phaselink
