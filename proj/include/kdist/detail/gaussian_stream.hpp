#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace kdist::detail {

/// Deterministic Gaussian stream: mt19937_64 -> uniform in (0,1] ->
/// Box-Muller. std::normal_distribution is implementation-defined, so the
/// transform is spelled out here; two builds with the same seed produce
/// identical streams.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double uniform01() {  // (0,1], 53-bit resolution
        return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace kdist::detail
