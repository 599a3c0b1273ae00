#pragma once

namespace phaselink {

/**
 * First-order lowpass smoother, y += a * (x - y) with a = 1 - exp(-2*pi*fc/fs).
 * Unit DC gain; the exponential mapping makes the discrete step response match
 * the analog RC curve exactly at the sample instants (1 - 1/e reached at
 * t = 1/(2*pi*fc)). Meant for cutoffs well below the update rate.
 */
class OnePoleLowpass {
  public:
    OnePoleLowpass(double cutoff_hz, double rate_hz);

    double step(double x)
    {
        state_ += alpha_ * (x - state_);
        return state_;
    }
    double value() const { return state_; }
    void reset(double v = 0.0) { state_ = v; }
    double alpha() const { return alpha_; }

  private:
    double alpha_ = 0.0;
    double state_ = 0.0;
};

} // namespace phaselink
