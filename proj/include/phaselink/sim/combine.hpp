#pragma once

#include <vector>

#include "phaselink/sim/experiment.hpp"

namespace phaselink {

/**
 * Observable combinations of an aligned two-board acquisition.
 *
 * Self-heterodyne: each record sees the common fiber process twice, so half of
 * either record estimates it and the difference of the records cancels it,
 * leaving laser round-trip residues, direction asymmetry and misalignment.
 *
 * Heterodyne: the records carry the fiber process with equal sign and the
 * laser difference with opposite signs, so the half-sum estimates the fiber
 * and the half-difference, after removing the steered-oscillator record twice,
 * estimates the laser difference regardless of how well the loop tracked.
 */
struct SelfHeterodyneResult {
    std::vector<double> fiber_estimate; // Hz
    std::vector<double> residual;       // Hz, record 1 minus record 2
};

struct HeterodyneResult {
    std::vector<double> fiber_estimate; // Hz
    std::vector<double> laser_estimate; // Hz, estimate of rho_2 - rho_1
};

SelfHeterodyneResult combine_self_heterodyne(const AlignedAcquisition& acq);
HeterodyneResult combine_heterodyne(const AlignedAcquisition& acq);

} // namespace phaselink
