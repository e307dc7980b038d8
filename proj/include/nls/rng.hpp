#pragma once

#include <cstdint>
#include <random>

#include "nls/grid.hpp"

namespace nls {

/// Seeded generator with platform-independent uniform/normal draws (the
/// standard distributions are implementation-defined, which would break
/// bit-identical CSV output across toolchains).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() {
        // Box-Muller; one value per call keeps the stream deterministic
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }
    cdouble unit_phase() { return std::polar(1.0, 2.0 * kPi * uniform()); }
    uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace nls
