#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sdoe {

// Deterministic random stream. All stochastic choices in the toolkit go
// through this class so a run is reproducible from a single integer seed;
// distributions are implemented here instead of <random> because the
// standard ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double two_pi = 6.283185307179586476925287;
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi) {
    double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sdoe
