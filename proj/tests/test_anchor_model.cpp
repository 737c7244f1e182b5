#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tipanchor/anchor_model.hpp"
#include "tipanchor/errors.hpp"
#include "tipanchor/rft.hpp"
#include "tipanchor/units.hpp"

using namespace tipanchor;

TEST_CASE("tip insertion: zero depth, area law and closed form") {
  const MediaProfile media = testing::SandWithZeta(0.5);
  const auto g = AnchorGeometry::TipExtender(0.0075, 0.3);
  CHECK(TipInsertionForce(0.0, g, media) == 0.0);
  const auto g2 = AnchorGeometry::TipExtender(0.015, 0.3);
  CHECK(TipInsertionForce(0.1, g2, media) == doctest::Approx(4.0 * TipInsertionForce(0.1, g, media)));
  const double kt = TipCoefficient(g, media);
  CHECK(kt == doctest::Approx(0.5e6));
  CHECK(TipInsertionForce(0.15, g, media) == doctest::Approx(kt * 0.15 * kPi * 0.0075 * 0.0075));
  CHECK(integrated::TipInsertionForce(0.15, g, media) ==
        doctest::Approx(TipInsertionForce(0.15, g, media)).epsilon(5e-3));
}

TEST_CASE("side force: quadratic in depth, linear in radius") {
  const MediaProfile media = testing::SandWithZeta(0.5);
  const auto g = AnchorGeometry::TipExtender(0.0075, 0.3);
  CHECK(SideAnchorForce(0.0, g, media) == 0.0);
  CHECK(SideAnchorForce(0.2, g, media) == doctest::Approx(4.0 * SideAnchorForce(0.1, g, media)));
  const auto g2 = AnchorGeometry::TipExtender(0.015, 0.3);
  CHECK(SideAnchorForce(0.1, g2, media) == doctest::Approx(2.0 * SideAnchorForce(0.1, g, media)));
  CHECK(integrated::SideAnchorForce(0.2, g, media) ==
        doctest::Approx(SideAnchorForce(0.2, g, media)).epsilon(5e-3));
}

TEST_CASE("rigid insertion") {
  const MediaProfile media = testing::SandWithZeta(0.5);
  const auto rigid = AnchorGeometry::RigidIntruder(0.0075, 0.3);
  const auto tip = AnchorGeometry::TipExtender(0.0075, 0.3);
  CHECK(RigidInsertionForce(0.0, rigid, media) == 0.0);
  for (double z = 0.01; z <= 0.3; z += 0.01) {
    CHECK(RigidInsertionForce(z, rigid, media) >= TipInsertionForce(z, tip, media));
  }
  const double expected = TipInsertionForce(0.15, tip, media) +
                          kPi * 0.0075 * SideCoefficient(tip, media) * 0.15 * 0.15 /
                              media.side_history_ratio;
  CHECK(RigidInsertionForce(0.15, rigid, media) == doctest::Approx(expected));
  CHECK(integrated::RigidInsertionForce(0.15, rigid, media) ==
        doctest::Approx(expected).epsilon(5e-3));
  CHECK_THROWS_AS(RigidInsertionForce(0.1, tip, media), ContractError);
  CHECK_THROWS_AS(NetSelfAnchorForce(0.1, rigid, media), ContractError);
}

TEST_CASE("peak extraction ratios") {
  const MediaProfile media = testing::SandWithZeta(0.5);
  const auto hairless = AnchorGeometry::TipExtender(0.0075, 0.15);
  const auto hairy = AnchorGeometry::HairyTipExtender(0.0075, 0.15, 1.4);
  const auto rigid = AnchorGeometry::RigidIntruder(0.0075, 0.15);
  CHECK(PeakExtractionForce(hairy, media) / PeakExtractionForce(hairless, media) ==
        doctest::Approx(1.4));
  CHECK(PeakExtractionForce(hairy, media) / PeakExtractionForce(rigid, media) ==
        doctest::Approx(2.5 * 1.4));
  AnchorGeometry empty = hairless;
  empty.length = 0.0;
  CHECK(PeakExtractionForce(empty, media) == 0.0);
}

TEST_CASE("net force crosses zero at (k_t/k_s)(r/kappa)") {
  const MediaProfile media = testing::SandWithZeta(0.3);
  for (double kappa : {1.0, 1.4, 2.0}) {
    const auto g = AnchorGeometry::HairyTipExtender(0.0075, 2.0, kappa);
    const double expected = TipCoefficient(g, media) / SideCoefficient(g, media) * 0.0075 / kappa;
    CHECK(NetSelfAnchorForce(0.0, g, media) == 0.0);
    CHECK(NetSelfAnchorForce(1e-3, g, media) > 0.0);
    const auto h = CriticalDepth(g, media);
    REQUIRE(h.has_value());
    CHECK(*h == doctest::Approx(expected).epsilon(1e-4));
    CHECK(NetSelfAnchorForce(*h, g, media) <= 1e-9);
  }
}

TEST_CASE("critical depth of the fine-sand profile is 12 cm") {
  const MediaProfile media = testing::FineSand();
  const auto g = AnchorGeometry::TipExtender(0.0075, 0.2);
  const auto h = CriticalDepth(g, media);
  REQUIRE(h.has_value());
  CHECK(std::abs(*h - 0.12) <= 1e-4);

  // Doubling the diameter doubles h*; hairs shrink it by 1/kappa.
  const auto wide = CriticalDepth(AnchorGeometry::TipExtender(0.015, 0.4), media);
  REQUIRE(wide.has_value());
  CHECK(*wide == doctest::Approx(2.0 * *h).epsilon(1e-3));
  const auto hairy = CriticalDepth(AnchorGeometry::HairyTipExtender(0.0075, 0.2, 1.4), media);
  REQUIRE(hairy.has_value());
  CHECK(*hairy == doctest::Approx(*h / 1.4).epsilon(1e-3));
}

TEST_CASE("no crossover within reach gives no critical depth") {
  const MediaProfile media = testing::FineSand();
  // 10 L cos(theta) = 1 cm is shallower than the 12 cm crossover.
  CHECK_FALSE(CriticalDepth(AnchorGeometry::TipExtender(0.0075, 0.001), media).has_value());
}

TEST_CASE("force report invariants") {
  const MediaProfile media = testing::FineSand();
  const auto g = AnchorGeometry::HairyTipExtender(0.0075, 0.15, 1.4);
  const ForceReport r = BuildForceReport(g, media, 0.004);
  REQUIRE(r.depths.size() == r.insertion.size());
  REQUIRE(r.depths.size() == r.extraction.size());
  REQUIRE(r.depths.size() == r.net.size());
  CHECK(r.depths.front() == 0.0);
  CHECK(r.depths.back() == doctest::Approx(0.15));
  for (std::size_t i = 1; i < r.depths.size(); ++i) CHECK(r.depths[i] > r.depths[i - 1]);
  CHECK(r.peak_insertion == doctest::Approx(*std::max_element(r.insertion.begin(), r.insertion.end())));
  CHECK(r.peak_extraction ==
        doctest::Approx(*std::max_element(r.extraction.begin(), r.extraction.end())));
  REQUIRE(r.extraction_to_insertion.has_value());
  CHECK(*r.extraction_to_insertion == doctest::Approx(r.peak_extraction / r.peak_insertion));
}

TEST_CASE("angled pairs") {
  const MediaProfile media = testing::FineSand();
  const auto g = AnchorGeometry::HairyTipExtender(0.0065, 0.45, 1.4);
  const AngledPairForces zero = AngledPairForce(0.0, g, media);
  CHECK(zero.insertion == doctest::Approx(2.0 * TipInsertionForce(0.45, g, media)));
  CHECK(zero.extraction == doctest::Approx(2.0 * PeakExtractionForce(g, media)));

  const AngledPairForces thirty = AngledPairForce(DegreesToRadians(30.0), g, media);
  CHECK(thirty.extraction < zero.extraction);
  CHECK(thirty.Ratio() < zero.Ratio());

  double previous = zero.insertion;
  for (double deg = 5.0; deg <= 60.0; deg += 5.0) {
    const double insertion = AngledPairForce(DegreesToRadians(deg), g, media).insertion;
    CHECK(insertion <= previous);
    previous = insertion;
  }
  CHECK_THROWS_AS(AngledPairForce(DegreesToRadians(61.0), g, media), RangeError);
  CHECK_THROWS_AS(AngledPairForce(-0.01, g, media), RangeError);
}

TEST_CASE("diameter sweep exponents and 1/d ratio") {
  const MediaProfile media = testing::FineSand();
  std::vector<double> diameters;
  for (int i = 0; i < 8; ++i) diameters.push_back(0.007 + (0.030 - 0.007) * i / 7.0);
  const DiameterSweep sweep = SweepDiameter(diameters, 0.15, media);
  CHECK(sweep.insertion_exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sweep.extraction_exponent == doctest::Approx(1.0).epsilon(1e-6));
  const double first = sweep.rows.front().ratio * sweep.rows.front().diameter;
  for (const auto& row : sweep.rows) CHECK(row.ratio * row.diameter == doctest::Approx(first).epsilon(0.01));

  const std::vector<double> single{0.01};
  CHECK_THROWS_AS(SweepDiameter(single, 0.15, media), ContractError);
  const std::vector<double> repeated{0.01, 0.01, 0.02};
  CHECK_THROWS(SweepDiameter(repeated, 0.15, media));
}

TEST_CASE("geometry preconditions") {
  const MediaProfile media = testing::FineSand();
  CHECK_THROWS_AS(TipInsertionForce(-0.01, AnchorGeometry::TipExtender(0.01, 0.1), media), ContractError);
  CHECK_THROWS(AnchorGeometry::TipExtender(0.0, 0.1).Validate());
  CHECK_THROWS(AnchorGeometry::TipExtender(0.01, 0.1, kHalfPi).Validate());
  CHECK_THROWS(AnchorGeometry::HairyTipExtender(0.01, 0.1, 0.8).Validate());
}
