#include "tipanchor/rft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {

Orientation TipOrientation(double tilt) { return {tilt, kHalfPi - tilt}; }

Orientation SideOrientation(double tilt) { return {kHalfPi - tilt, -(kHalfPi - tilt)}; }

StressPair ElementalStress(double beta, double gamma, const MediaProfile& media) {
  const double zeta = media.Zeta();
  const StressPair raw = media.stress_table.Interpolate(beta, gamma);
  return {zeta * raw.alpha_z, zeta * raw.alpha_x};
}

std::vector<SurfaceElement> DiscretizeAnchor(const AnchorGeometry& geometry,
                                             double extended_length, double element_size) {
  geometry.Validate();
  if (!(extended_length >= 0.0) || !std::isfinite(extended_length)) {
    throw ContractError("extended length must be >= 0");
  }
  if (!(element_size > 0.0)) throw ContractError("element size must be positive");
  if (element_size >= geometry.radius || element_size >= geometry.length) {
    throw ContractError("resolution too coarse: element size " + std::to_string(element_size) +
                        " m is not below the root radius and length");
  }

  const double r = geometry.radius;
  const double cos_tilt = std::cos(geometry.tilt);
  const Orientation tip = TipOrientation(geometry.tilt);
  const Orientation side = SideOrientation(geometry.tilt);
  const double tip_depth = extended_length * cos_tilt;

  std::vector<SurfaceElement> elements;

  // Tip disc: annuli no wider than element_size, split into sectors whose
  // arc length at mid-radius is at most element_size.
  const auto rings = static_cast<int>(std::ceil(r / element_size));
  for (int k = 0; k < rings; ++k) {
    const double inner = r * k / rings;
    const double outer = r * (k + 1) / rings;
    const double mid = 0.5 * (inner + outer);
    const auto sectors = std::max(1, static_cast<int>(std::ceil(2.0 * kPi * mid / element_size)));
    const double area = kPi * (outer * outer - inner * inner) / sectors;
    for (int s = 0; s < sectors; ++s) {
      elements.push_back({area, tip_depth, tip.attack, tip.intrusion, Motion::kDownward,
                          SurfacePart::kTip});
    }
  }

  if (extended_length == 0.0) return elements;

  // Lateral wall: axial bands, each split around the circumference.
  const auto bands = static_cast<int>(std::ceil(extended_length / element_size));
  const auto around = static_cast<int>(std::ceil(2.0 * kPi * r / element_size));
  const double band_length = extended_length / bands;
  const double area = 2.0 * kPi * r * band_length / around;
  for (int b = 0; b < bands; ++b) {
    const double depth = (b + 0.5) * band_length * cos_tilt;
    for (int a = 0; a < around; ++a) {
      elements.push_back({area, depth, side.attack, side.intrusion, Motion::kUpward,
                          SurfacePart::kLateral});
    }
  }
  return elements;
}

double IntegrateVerticalForce(std::span<const SurfaceElement> elements,
                              const MediaProfile& media) {
  if (elements.empty()) throw ContractError("cannot integrate over an empty element list");
  double total = 0.0;
  for (const SurfaceElement& e : elements) {
    if (!(e.depth >= 0.0)) {
      throw ContractError("surface element above the free surface (z = " +
                          std::to_string(e.depth) + " m)");
    }
    if (!(e.area > 0.0)) throw ContractError("surface element with non-positive area");
    const double stress = ElementalStress(e.attack, e.intrusion, media).alpha_z;
    const double force = stress * e.depth * e.area;
    total += e.motion == Motion::kDownward ? force : -force;
  }
  return total;
}

}  // namespace tipanchor
