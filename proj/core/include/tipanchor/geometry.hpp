#pragma once

namespace tipanchor {

enum class Skin { kHairless, kHairy };
enum class InsertionMode { kTipExtender, kRigidIntruder };

// One root. SI units; tilt is measured from vertical.
struct AnchorGeometry {
  double radius = 0.0;
  double length = 0.0;
  double tilt = 0.0;
  Skin skin = Skin::kHairless;
  double hair_factor = 1.0;  // kappa, used only when skin is kHairy
  InsertionMode mode = InsertionMode::kTipExtender;

  // kappa for hairy skin, 1 otherwise.
  double ExtractionMultiplier() const { return skin == Skin::kHairy ? hair_factor : 1.0; }
  double Diameter() const { return 2.0 * radius; }
  double CrossSection() const;
  // Vertical depth of the tip when fully deployed, L cos(theta).
  double DeployedDepth() const;

  // Throws ContractError when r <= 0, L <= 0, theta outside [0, pi/2) or
  // kappa < 1.
  void Validate() const;

  static AnchorGeometry TipExtender(double radius, double length, double tilt = 0.0);
  static AnchorGeometry HairyTipExtender(double radius, double length, double hair_factor,
                                         double tilt = 0.0);
  static AnchorGeometry RigidIntruder(double radius, double length);
};

}  // namespace tipanchor
