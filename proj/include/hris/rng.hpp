// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_RNG_HPP
#define HRIS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace hris {

// Deterministic random source. Draws are generated directly from the raw
// mt19937_64 stream instead of std::distribution objects, whose output is
// implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Circularly symmetric complex gaussian with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double r = std::sqrt(-std::log(u1));
    const double a = 2.0 * M_PI * uniform();
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hris

#endif
