#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace phaselink {

// splitmix64 step, used to derive stream seeds from (seed, salt) pairs so
// independent components and blocks never share generator state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4ecda1f4914f3ULL;
    return z ^ (z >> 31);
}

/**
 * Deterministic standard-normal source. The transform is pinned here (polar
 * Box-Muller over mt19937_64) rather than taken from std::normal_distribution
 * so identical seeds give bit-identical sequences on any standard library.
 */
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double next()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform_pm1();
            v = uniform_pm1();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    // Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    double uniform_pm1() { return 2.0 * uniform() - 1.0; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace phaselink
