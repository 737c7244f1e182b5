#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tipanchor/anchor_model.hpp"
#include "tipanchor/calibration.hpp"
#include "tipanchor/errors.hpp"

using namespace tipanchor;

namespace {

std::vector<CalibrationSample> Synthesize(const AnchorGeometry& g, const MediaProfile& media,
                                          Regime regime, int count = 10) {
  std::vector<CalibrationSample> samples;
  for (int i = 1; i <= count; ++i) {
    const double z = 0.015 * i;
    double f = 0.0;
    switch (regime) {
      case Regime::kRigidInsertion: f = RigidInsertionForce(z, g, media); break;
      case Regime::kConstrainedTipInsertion: f = TipInsertionForce(z, g, media); break;
      case Regime::kSelfAnchorWeight: f = NetSelfAnchorForce(z, g, media); break;
      case Regime::kExtractionPeak: break;
    }
    samples.push_back({z, f, regime});
  }
  return samples;
}

}  // namespace

TEST_CASE("regime names round-trip") {
  for (Regime r : {Regime::kRigidInsertion, Regime::kConstrainedTipInsertion,
                   Regime::kExtractionPeak, Regime::kSelfAnchorWeight}) {
    CHECK(ParseRegime(RegimeName(r)) == r);
  }
  CHECK_FALSE(ParseRegime("rigid").has_value());
}

TEST_CASE("zeta round-trip on rigid samples") {
  const auto g = AnchorGeometry::RigidIntruder(0.0075, 0.2);
  const auto samples = Synthesize(g, testing::SandWithZeta(1.7), Regime::kRigidInsertion);
  const ScaleFit fit = FitScaleFactor(samples, g, GenericSand());
  CHECK(std::abs(fit.scale_factor - 1.7) / 1.7 < 1e-6);
  CHECK(fit.residual_rms < 1e-9);
}

TEST_CASE("zeta round-trip on constrained tip samples") {
  const auto g = AnchorGeometry::TipExtender(0.0075, 0.2);
  const auto samples = Synthesize(g, testing::SandWithZeta(0.23), Regime::kConstrainedTipInsertion);
  CHECK(FitScaleFactor(samples, g, GenericSand()).scale_factor == doctest::Approx(0.23).epsilon(1e-9));
}

TEST_CASE("zeta fit rejects degenerate and mixed data") {
  const auto g = AnchorGeometry::RigidIntruder(0.0075, 0.2);
  std::vector<CalibrationSample> surface(4, {0.0, 1.0, Regime::kRigidInsertion});
  CHECK_THROWS_AS(FitScaleFactor(surface, g, GenericSand()), DegenerateFitError);

  auto mixed = Synthesize(g, testing::SandWithZeta(1.0), Regime::kRigidInsertion);
  mixed[3].regime = Regime::kConstrainedTipInsertion;
  CHECK_THROWS_WITH_AS(FitScaleFactor(mixed, g, GenericSand()), doctest::Contains("mixed-regime"),
                       ContractError);

  const std::vector<CalibrationSample> peaks(4, {0.1, 1.0, Regime::kExtractionPeak});
  CHECK_THROWS_AS(FitScaleFactor(peaks, g, GenericSand()), ContractError);
}

TEST_CASE("zeta fit under 5% noise stays within 5%") {
  const auto g = AnchorGeometry::RigidIntruder(0.0075, 0.2);
  const auto clean = Synthesize(g, testing::SandWithZeta(1.7), Regime::kRigidInsertion);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  auto noisy = clean;
  for (auto& s : noisy) s.force *= 1.0 + noise(rng);
  CHECK(std::abs(FitScaleFactor(noisy, g, GenericSand()).scale_factor - 1.7) / 1.7 < 0.05);
}

TEST_CASE("history and hair ratios") {
  const HistoryHairFit typical = FitHistoryAndHair(ExtractionPeaks{1.0, 2.5, 3.5});
  CHECK(typical.side_history_ratio == doctest::Approx(2.5));
  CHECK(typical.hair_factor == doctest::Approx(1.4));
  CHECK_FALSE(typical.hair_below_unity);

  const HistoryHairFit equal = FitHistoryAndHair(ExtractionPeaks{2.0, 2.0, 2.0});
  CHECK(equal.side_history_ratio == 1.0);
  CHECK(equal.hair_factor == 1.0);

  const HistoryHairFit weak = FitHistoryAndHair(ExtractionPeaks{1.0, 2.5, 2.0});
  CHECK(weak.hair_factor < 1.0);
  CHECK(weak.hair_below_unity);

  CHECK_THROWS_AS(FitHistoryAndHair(ExtractionPeaks{0.0, 2.5, 3.5}), ContractError);

  const std::vector<double> a{0.9, 1.1}, b{2.4, 2.6}, c{3.4, 3.6};
  CHECK(FitHistoryAndHair(a, b, c).hair_factor == doctest::Approx(1.4));
}

TEST_CASE("tip/side ratio from the 12 cm crossover samples") {
  const TipSideFit fit = FitTipSideRatio(testing::FineSandSamples(), testing::FineSandProbe());
  CHECK(fit.ratio == doctest::Approx(16.0).epsilon(1e-4));
  REQUIRE(fit.critical_depth.has_value());
  CHECK(*fit.critical_depth == doctest::Approx(0.12).epsilon(1e-4));
  CHECK(fit.crossover_observed);
  CHECK_FALSE(fit.underdetermined);
}

TEST_CASE("tip/side ratio round-trips model samples") {
  const MediaProfile media = testing::SandWithZeta(0.4);
  const auto g = AnchorGeometry::HairyTipExtender(0.006, 0.3, 1.3);
  const auto samples = Synthesize(g, media, Regime::kSelfAnchorWeight);
  const TipSideFit fit = FitTipSideRatio(samples, g);
  const double truth = TipCoefficient(g, media) / SideCoefficient(g, media);
  CHECK(std::abs(fit.ratio - truth) / truth < 1e-6);

  const MediaProfile calibrated = ApplyTipSideFit(GenericSand(), fit, g);
  CHECK(TipCoefficient(g, calibrated) == doctest::Approx(fit.tip_coefficient).epsilon(1e-9));
  CHECK(SideCoefficient(g, calibrated) == doctest::Approx(fit.side_coefficient).epsilon(1e-9));
}

TEST_CASE("tip/side fit flags") {
  const auto g = testing::FineSandProbe();
  auto shallow = testing::FineSandSamples();
  shallow.resize(4);  // all positive: no crossover
  const TipSideFit none = FitTipSideRatio(shallow, g);
  CHECK_FALSE(none.crossover_observed);

  const std::vector<CalibrationSample> two{{0.03, 0.75, Regime::kSelfAnchorWeight},
                                           {0.15, -1.25, Regime::kSelfAnchorWeight}};
  CHECK(FitTipSideRatio(two, g).underdetermined);

  const std::vector<CalibrationSample> one{{0.03, 0.75, Regime::kSelfAnchorWeight}};
  CHECK_THROWS_AS(FitTipSideRatio(one, g), ContractError);
  const std::vector<CalibrationSample> wrong{{0.03, 0.75, Regime::kRigidInsertion},
                                             {0.06, 1.0, Regime::kRigidInsertion}};
  CHECK_THROWS_AS(FitTipSideRatio(wrong, g), ContractError);
}

TEST_CASE("fits ignore sample order") {
  auto samples = testing::FineSandSamples();
  const TipSideFit forward = FitTipSideRatio(samples, testing::FineSandProbe());
  std::reverse(samples.begin(), samples.end());
  std::swap(samples[1], samples[5]);
  const TipSideFit shuffled = FitTipSideRatio(samples, testing::FineSandProbe());
  CHECK(forward.tip_coefficient == shuffled.tip_coefficient);
  CHECK(forward.side_coefficient == shuffled.side_coefficient);
}

TEST_CASE("side branch recovered from rigid samples") {
  const auto tip = AnchorGeometry::TipExtender(0.0075, 0.2);
  const auto rigid = AnchorGeometry::RigidIntruder(0.0075, 0.2);
  MediaProfile truth = testing::SandWithZeta(0.3);
  truth.stress_table = truth.stress_table.WithScaledExtractionBranch(4.0);
  const auto samples = Synthesize(rigid, truth, Regime::kRigidInsertion);

  const MediaProfile start = testing::SandWithZeta(0.3);
  const SideBranchFit fit = FitRigidSideBranch(samples, rigid, start);
  CHECK(fit.side_coefficient == doctest::Approx(SideCoefficient(tip, truth)).epsilon(1e-9));
  CHECK(fit.branch_scale == doctest::Approx(4.0).epsilon(1e-9));
  const MediaProfile calibrated = ApplySideBranchFit(start, fit);
  CHECK(RigidInsertionForce(0.1, rigid, calibrated) ==
        doctest::Approx(RigidInsertionForce(0.1, rigid, truth)).epsilon(1e-9));
}
