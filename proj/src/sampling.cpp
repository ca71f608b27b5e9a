#include "algmech/sampling.hpp"

#include "algmech/errors.hpp"

namespace algmech {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<EvalPoint> generate_samples(int n, int m, const SampleSpec& spec) {
  if (spec.count < 1) throw ConfigError("/samples/count", "must be at least 1");
  if (!spec.x_box.empty() && static_cast<int>(spec.x_box.size()) != n)
    throw ConfigError("/samples/x_box", "expected one box per base coordinate");
  const auto [ylo, yhi] = spec.y_magnitude;
  if (!(ylo > 0.0 && yhi >= ylo)) throw ConfigError("/samples/y_magnitude", "need 0 < lo <= hi");

  SplitMix64 rng(spec.seed);
  std::vector<EvalPoint> out;
  out.reserve(spec.count);
  for (int s = 0; s < spec.count; ++s) {
    EvalPoint p;
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = spec.x_box.empty() ? std::pair{-2.0, 2.0} : spec.x_box[i];
      p.x.push_back(rng.uniform(lo, hi));
    }
    for (int a = 0; a < m; ++a) {
      const double mag = rng.uniform(ylo, yhi);
      p.y.push_back((rng.next() & 1) ? -mag : mag);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace algmech
