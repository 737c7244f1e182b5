#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"
#include "tipanchor/rft.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {

// Absolute tolerance of the critical-depth root finder [m].
inline constexpr double kCriticalDepthTolerance = 1e-5;
// Tilt range over which angled roots are modelled.
inline constexpr double kMaxModelledTilt = kPi / 3.0;  // 60 degrees

// Lithostatic slopes zeta * alpha_z at the tip and side orientations [N/m^3].
double TipCoefficient(const AnchorGeometry& geometry, const MediaProfile& media);
double SideCoefficient(const AnchorGeometry& geometry, const MediaProfile& media);

// All forces are vertical components [N]; `depth` is the vertical depth of
// the tip. For tilted roots the axial tip force is projected with cos(tilt).

// Constrained insertion: disc resistance k_t * z * pi r^2.
double TipInsertionForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media);

// Static-contact side anchoring kappa * pi r k_s h^2.
double SideAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media);

// Tip plus dynamic-contact wall resistance, F_t + pi r k_s z^2 / rho.
// Requires a rigid intruder.
double RigidInsertionForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media);

// Onset-of-motion extraction of the fully deployed root.
double PeakExtractionForce(const AnchorGeometry& geometry, const MediaProfile& media);

// F_t - F_s. Positive values need an external reaction. Tip extenders only.
double NetSelfAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media);

// Smallest depth where the net force reaches zero, searched up to ten body
// lengths. Tip extenders only.
std::optional<double> CriticalDepth(const AnchorGeometry& geometry, const MediaProfile& media);

// Largest positive net force over the growth trajectory [0, L cos(theta)].
double PeakNetSelfAnchorForce(const AnchorGeometry& geometry, const MediaProfile& media);

// Element-integration route over DiscretizeAnchor meshes. These share no
// code with the closed forms above and exist to cross-check them.
namespace integrated {
double TipInsertionForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                         double element_size = kDefaultElementSize);
double SideAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                       double element_size = kDefaultElementSize);
double RigidInsertionForce(double depth, const AnchorGeometry& geometry,
                           const MediaProfile& media, double element_size = kDefaultElementSize);
double NetSelfAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                          double element_size = kDefaultElementSize);
}  // namespace integrated

struct ForceReport {
  std::vector<double> depths;
  std::vector<double> insertion;   // constrained tip or rigid insertion
  std::vector<double> extraction;  // peak extraction if deployed to that depth
  std::vector<double> net;         // self-anchoring net force (= insertion for rigid)
  double peak_insertion = 0.0;
  double peak_extraction = 0.0;
  std::optional<double> critical_depth;
  std::optional<double> extraction_to_insertion;
};

// Depth grid from 0 to the deployed depth in `depth_step` increments, with
// the deployed depth as the last point.
ForceReport BuildForceReport(const AnchorGeometry& geometry, const MediaProfile& media,
                             double depth_step = kDefaultElementSize);

struct AngledPairForces {
  double insertion = 0.0;
  double extraction = 0.0;
  double Ratio() const { return extraction / insertion; }
};

// Two identical roots in an X at `tilt`, grown to axial length L and pulled
// out vertically. Totals are twice one root's vertical component.
AngledPairForces AngledPairForce(double tilt, const AnchorGeometry& geometry,
                                 const MediaProfile& media);

struct DiameterSweepRow {
  double diameter = 0.0;
  double insertion = 0.0;
  double extraction = 0.0;
  double ratio = 0.0;
};

struct DiameterSweep {
  std::vector<DiameterSweepRow> rows;
  double insertion_exponent = 0.0;
  double extraction_exponent = 0.0;
};

// Constrained insertion and peak extraction at a fixed depth for each
// diameter, with log-log least-squares exponents. `base` supplies skin, tilt
// and mode; its radius and length are replaced.
DiameterSweep SweepDiameter(std::span<const double> diameters, double depth,
                            const MediaProfile& media, const AnchorGeometry& base = {});

}  // namespace tipanchor
