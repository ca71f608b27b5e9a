#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "algmech/eval.hpp"

namespace algmech {

/// splitmix64; a fixed seed always yields the same stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

struct SampleSpec {
  int count = 50;
  std::uint64_t seed = 1;
  /// One [lo, hi] box per base coordinate; empty means [-2, 2] for all.
  std::vector<std::pair<double, double>> x_box;
  /// |y^a| is drawn from this range and given a random sign, so every
  /// sample stays away from the zero section.
  std::pair<double, double> y_magnitude{0.1, 2.0};
};

std::vector<EvalPoint> generate_samples(int n, int m, const SampleSpec& spec);

}  // namespace algmech
