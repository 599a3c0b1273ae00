#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "phaselink/sim/experiment.hpp"

namespace phaselink {

/**
 * Plain-text experiment description: `[section]` headers over `key = value`
 * lines, `#` comments, numbers in any C++ float syntax. Sections cover the
 * link geometry, the four noise processes, acquisition rates and duration,
 * the correction loop and the synchronization policy; anything unspecified
 * keeps the built-in defaults, and unknown keys are rejected rather than
 * ignored. The 64-bit FNV-1a hash of the raw text travels with every
 * acquisition written from it, tying data files back to their scenario.
 */
struct ScenarioFile {
    ExperimentConfig experiment;
    std::uint64_t hash = 0;
};

ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

// Commented template with representative deployed-link numbers: 36 km span
// (180 us one way), 40 MHz offset oscillators, lasers around 0.3 Hz^2/Hz
// white frequency noise with 0.5 Hz/s drift, fiber around 100 Hz^2/Hz.
std::string default_scenario_text(LinkScheme scheme);

std::uint64_t fnv1a64(std::span<const char> bytes);

} // namespace phaselink
