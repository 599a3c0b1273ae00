#include "phaselink/model/link.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace phaselink {

namespace {

int integer_delay(double delay_s, double rate)
{
    if (delay_s < 0.0)
        throw std::invalid_argument("link delay must be non-negative");
    double samples = delay_s * rate;
    double rounded = std::round(samples);
    if (std::abs(samples - rounded) > 1e-6)
        throw std::invalid_argument("link delay must land on the sample grid at this rate");
    return static_cast<int>(rounded);
}

} // namespace

LinkSimulator::LinkSimulator(const LinkScenario& scenario, double rate)
    : scenario_(scenario),
      rate_(rate),
      delay_(integer_delay(scenario.delay_s, rate)),
      laser1_(scenario.laser1, rate),
      laser2_(scenario.laser2, rate),
      eta_(scenario.fiber_common, rate),
      diff_(scenario.fiber_differential, rate)
{
    if (rate <= 0.0)
        throw std::invalid_argument("link rate must be positive");
    scenario.laser1.validate();
    scenario.laser2.validate();
    scenario.fiber_common.validate();
    scenario.fiber_differential.validate();
    // Lead-in: light detected right after start left up to 2*tau earlier, so
    // prime each history with the process extended into the past. The
    // steerable-offset deviation is defined as zero before the record begins.
    std::size_t lead = static_cast<std::size_t>(2 * delay_);
    h_laser1_ = laser1_.take(lead);
    h_laser2_ = laser2_.take(lead);
    h_eta_ = eta_.take(lead);
    h_diff_ = diff_.take(lead);
    h_fd_.assign(lead, 0.0);
}

LinkSignals LinkSimulator::step(std::size_t n, std::span<const double> f_drift_dev)
{
    if (!f_drift_dev.empty() && f_drift_dev.size() != n)
        throw std::invalid_argument("drift deviation series must match the step length");

    const std::size_t lead = static_cast<std::size_t>(2 * delay_);
    auto extend = [&](std::vector<double>& hist, PowerLawNoiseGenerator& gen) {
        gen.generate(n, hist); // hist now holds lead + n samples
    };
    extend(h_laser1_, laser1_);
    extend(h_laser2_, laser2_);
    extend(h_eta_, eta_);
    extend(h_diff_, diff_);
    h_fd_.reserve(lead + n);
    for (std::size_t k = 0; k < n; ++k)
        h_fd_.push_back(f_drift_dev.empty() ? 0.0 : f_drift_dev[k]);

    LinkSignals out;
    out.rate = rate_;
    out.delay_samples = delay_;
    out.pd1.resize(n);
    out.pd2.resize(n);
    out.eta_truth.resize(n);
    out.laser_rel_truth.resize(n);

    const int m = delay_;
    const double* l1 = h_laser1_.data() + lead;
    const double* l2 = h_laser2_.data() + lead;
    const double* et = h_eta_.data() + lead;
    const double* df = h_diff_.data() + lead;
    const double* fd = h_fd_.data() + lead;

    for (std::size_t k = 0; k < n; ++k) {
        double eta_now = et[k];
        double d_now = df[k];
        double d_back = df[static_cast<std::ptrdiff_t>(k) - m];
        if (scenario_.scheme == LinkScheme::self_heterodyne) {
            out.pd1[k] = l1[static_cast<std::ptrdiff_t>(k) - 2 * m] - l1[k] + 2.0 * eta_now +
                         0.5 * (d_back - d_now);
            out.pd2[k] = l2[static_cast<std::ptrdiff_t>(k) - 2 * m] - l2[k] + 2.0 * eta_now +
                         0.5 * (d_now - d_back);
        } else {
            double fd_back = fd[static_cast<std::ptrdiff_t>(k) - m];
            out.pd1[k] = l2[static_cast<std::ptrdiff_t>(k) - m] - l1[k] + fd_back + eta_now -
                         0.5 * d_now;
            out.pd2[k] = l1[static_cast<std::ptrdiff_t>(k) - m] - l2[k] - fd[k] + eta_now +
                         0.5 * d_now;
        }
        out.eta_truth[k] = eta_now;
        out.laser_rel_truth[k] = l2[k] - l1[k];
    }

    // Keep only the trailing lead window for the next step.
    auto trim = [&](std::vector<double>& hist) {
        hist.erase(hist.begin(), hist.end() - static_cast<std::ptrdiff_t>(lead));
    };
    trim(h_laser1_);
    trim(h_laser2_);
    trim(h_eta_);
    trim(h_diff_);
    trim(h_fd_);
    produced_ += static_cast<std::int64_t>(n);
    return out;
}

LinkSignals simulate_link(const LinkScenario& scenario, std::size_t n, double rate)
{
    LinkSimulator sim(scenario, rate);
    return sim.step(n);
}

} // namespace phaselink
