#pragma once

#include <cmath>
#include <cstdint>

#include "fftseso/geometry.hpp"

namespace fftseso {

/**
 * @brief Deterministic Gaussian generator (splitmix64 + Box-Muller).
 *
 * std::normal_distribution has an implementation-defined draw sequence; this
 * generator pins the byte-exact output the determinism contract needs.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]; keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    Vec3 gaussian3(double sigma) {
        return Vec3(sigma * gaussian(), sigma * gaussian(), sigma * gaussian());
    }

  private:
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fftseso
