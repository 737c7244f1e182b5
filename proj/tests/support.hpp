#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tipanchor/calibration.hpp"
#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"

namespace tipanchor::testing {

inline MediaProfile SandWithZeta(double zeta) { return GenericSand().WithScaleFactor(zeta); }

// Net force samples of a 15 mm tip extender crossing zero at 12 cm.
inline std::vector<CalibrationSample> FineSandSamples() {
  std::vector<CalibrationSample> samples;
  for (int i = 0; i < 9; ++i) {
    const double h = 0.03 + 0.015 * i;
    samples.push_back({h, 33.33 * (h - h * h / 0.12), Regime::kSelfAnchorWeight});
  }
  return samples;
}

inline AnchorGeometry FineSandProbe() { return AnchorGeometry::TipExtender(0.0075, 0.20); }

// The profile the fine-sand calibration scenario produces.
inline MediaProfile FineSand() {
  MediaProfile media = GenericSand();
  const TipSideFit fit = FitTipSideRatio(FineSandSamples(), FineSandProbe());
  media = ApplyTipSideFit(media, fit, FineSandProbe());
  media.name = "fine_sand";
  return media;
}

// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double Uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool Coin() { return Int(0, 1) == 1; }
  AnchorGeometry TipExtender() {
    AnchorGeometry g = AnchorGeometry::TipExtender(Uniform(0.003, 0.015), Uniform(0.05, 0.5));
    if (Coin()) {
      g.skin = Skin::kHairy;
      g.hair_factor = Uniform(1.0, 2.0);
    }
    return g;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tipanchor::testing
