#include "phaselink/control/pid.hpp"

#include <algorithm>
#include <stdexcept>

namespace phaselink {

void PidConfig::validate() const
{
    if (!(update_rate_hz > 0.0))
        throw std::invalid_argument("update rate must be positive");
    if (!(output_max > output_min))
        throw std::invalid_argument("output limits must be ordered");
    if (prefilter_cutoff_hz < 0.0)
        throw std::invalid_argument("prefilter cutoff must be non-negative");
}

PidController::PidController(const PidConfig& config) : config_(config)
{
    config_.validate();
    dt_ = 1.0 / config_.update_rate_hz;
}

void PidController::reset()
{
    integrator_ = 0.0;
    prev_error_ = 0.0;
    have_prev_ = false;
    saturated_ = false;
}

double PidController::step(double error)
{
    double requested = integrator_ + config_.ki * error * dt_;
    integrator_ = std::clamp(requested, config_.output_min, config_.output_max);

    double derivative = 0.0;
    if (have_prev_)
        derivative = (error - prev_error_) / dt_;
    prev_error_ = error;
    have_prev_ = true;

    double out = config_.kp * error + integrator_ + config_.kd * derivative;
    double clamped = std::clamp(out, config_.output_min, config_.output_max);
    // Either clamp engaging means the commanded actuation was cut short.
    saturated_ = clamped != out || integrator_ != requested;
    return clamped;
}

} // namespace phaselink
