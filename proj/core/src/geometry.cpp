#include "tipanchor/geometry.hpp"

#include <cmath>
#include <string>

#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {

double AnchorGeometry::CrossSection() const { return kPi * radius * radius; }

double AnchorGeometry::DeployedDepth() const { return length * std::cos(tilt); }

void AnchorGeometry::Validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ContractError("root radius must be positive, got " + std::to_string(radius));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ContractError("root length must be positive, got " + std::to_string(length));
  }
  if (!(tilt >= 0.0 && tilt < kHalfPi)) {
    throw ContractError("root tilt must lie in [0, 90) degrees, got " +
                        std::to_string(RadiansToDegrees(tilt)) + " deg");
  }
  if (skin == Skin::kHairy && !(hair_factor >= 1.0 && std::isfinite(hair_factor))) {
    throw ContractError("hair factor must be >= 1, got " + std::to_string(hair_factor));
  }
}

AnchorGeometry AnchorGeometry::TipExtender(double radius, double length, double tilt) {
  AnchorGeometry g;
  g.radius = radius;
  g.length = length;
  g.tilt = tilt;
  return g;
}

AnchorGeometry AnchorGeometry::HairyTipExtender(double radius, double length, double hair_factor,
                                                double tilt) {
  AnchorGeometry g = TipExtender(radius, length, tilt);
  g.skin = Skin::kHairy;
  g.hair_factor = hair_factor;
  return g;
}

AnchorGeometry AnchorGeometry::RigidIntruder(double radius, double length) {
  AnchorGeometry g = TipExtender(radius, length);
  g.mode = InsertionMode::kRigidIntruder;
  return g;
}

}  // namespace tipanchor
