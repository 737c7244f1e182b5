#pragma once

#include <span>
#include <vector>

#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"

namespace tipanchor {

// Default mesh resolution [m].
inline constexpr double kDefaultElementSize = 1e-3;

enum class Motion { kDownward, kUpward };
enum class SurfacePart { kTip, kLateral };

struct SurfaceElement {
  double area = 0.0;       // dA [m^2]
  double depth = 0.0;      // |z| below the free surface [m]
  double attack = 0.0;     // beta [rad]
  double intrusion = 0.0;  // gamma [rad]
  Motion motion = Motion::kDownward;
  SurfacePart part = SurfacePart::kTip;
};

struct Orientation {
  double attack = 0.0;
  double intrusion = 0.0;
};

// Tip disc of a root tilted `tilt` from vertical, advancing along its axis.
Orientation TipOrientation(double tilt);
// Lateral wall of a root tilted `tilt` from vertical, sliding out along its
// axis. At tilt 0 this is a vertical wall moving straight up.
Orientation SideOrientation(double tilt);

// zeta * table(beta, gamma).
StressPair ElementalStress(double beta, double gamma, const MediaProfile& media);

// Meshes a root whose tip has advanced `extended_length` along its axis.
// The tip disc (area pi r^2) sits at depth extended_length * cos(tilt) and
// moves down; lateral rings cover the submerged wall, each at the depth of
// its axial midpoint, and move up (the anchoring direction).
std::vector<SurfaceElement> DiscretizeAnchor(const AnchorGeometry& geometry,
                                             double extended_length,
                                             double element_size = kDefaultElementSize);

// Sum of alpha_z * z * dA. Downward-moving elements contribute upward
// (positive) force, upward-moving elements downward (negative) force.
double IntegrateVerticalForce(std::span<const SurfaceElement> elements,
                              const MediaProfile& media);

}  // namespace tipanchor
