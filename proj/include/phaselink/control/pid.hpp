#pragma once

namespace phaselink {

/**
 * Discrete PID gains and limits. The integrator state itself is clamped to the
 * output range (integrator-clamping anti-windup), so after a long saturated
 * stretch the loop recovers without unwinding a runaway sum. Defaults give a
 * pure integrator critically damped against a 0.01 Hz measurement prefilter;
 * faster loops override per scenario.
 */
struct PidConfig {
    double kp = 0.0;
    double ki = 0.0157; // 1/s, = 2*pi*0.01/4
    double kd = 0.0;
    double update_rate_hz = 1.0e3;
    double prefilter_cutoff_hz = 0.01;
    double output_min = -2.0e6;
    double output_max = 2.0e6;

    void validate() const;
};

class PidController {
  public:
    explicit PidController(const PidConfig& config);

    // One update from the current error; returns the clamped actuation.
    double step(double error);

    bool saturated() const { return saturated_; }
    double integrator() const { return integrator_; }
    void reset();

  private:
    PidConfig config_;
    double dt_ = 0.0;
    double integrator_ = 0.0;
    double prev_error_ = 0.0;
    bool have_prev_ = false;
    bool saturated_ = false;
};

} // namespace phaselink
