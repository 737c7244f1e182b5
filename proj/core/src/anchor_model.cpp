#include "tipanchor/anchor_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "tipanchor/errors.hpp"
#include "tipanchor/numerics.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {
namespace {

void RequireDepth(double depth) {
  if (!(depth >= 0.0) || !std::isfinite(depth)) {
    throw ContractError("depth must be finite and >= 0, got " + std::to_string(depth));
  }
}

void RequireMode(const AnchorGeometry& geometry, InsertionMode mode, const char* operation) {
  if (geometry.mode != mode) {
    throw ContractError(std::string(operation) + " requires a " +
                        (mode == InsertionMode::kTipExtender ? "tip extender" : "rigid intruder"));
  }
}

// Growth-axis length whose tip sits at vertical `depth`.
double AxialLength(double depth, const AnchorGeometry& geometry) {
  return depth / std::cos(geometry.tilt);
}

}  // namespace

double TipCoefficient(const AnchorGeometry& geometry, const MediaProfile& media) {
  const Orientation tip = TipOrientation(geometry.tilt);
  return ElementalStress(tip.attack, tip.intrusion, media).alpha_z;
}

double SideCoefficient(const AnchorGeometry& geometry, const MediaProfile& media) {
  const Orientation side = SideOrientation(geometry.tilt);
  return ElementalStress(side.attack, side.intrusion, media).alpha_z;
}

double TipInsertionForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media) {
  RequireDepth(depth);
  geometry.Validate();
  return TipCoefficient(geometry, media) * depth * geometry.CrossSection() *
         std::cos(geometry.tilt);
}

double SideAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media) {
  RequireDepth(depth);
  geometry.Validate();
  return geometry.ExtractionMultiplier() * kPi * geometry.radius *
         SideCoefficient(geometry, media) * depth * depth;
}

double RigidInsertionForce(double depth, const AnchorGeometry& geometry,
                           const MediaProfile& media) {
  RequireMode(geometry, InsertionMode::kRigidIntruder, "rigid insertion force");
  const double wall = kPi * geometry.radius * SideCoefficient(geometry, media) * depth * depth /
                      media.side_history_ratio;
  return TipInsertionForce(depth, geometry, media) + wall;
}

double PeakExtractionForce(const AnchorGeometry& geometry, const MediaProfile& media) {
  // A root that never grew holds nothing.
  if (geometry.length == 0.0) {
    AnchorGeometry grown = geometry;
    grown.length = 1.0;
    grown.Validate();
    return 0.0;
  }
  geometry.Validate();
  const double side = SideAnchorForce(geometry.DeployedDepth(), geometry, media);
  return geometry.mode == InsertionMode::kTipExtender ? side : side / media.side_history_ratio;
}

double NetSelfAnchorForce(double depth, const AnchorGeometry& geometry,
                          const MediaProfile& media) {
  RequireMode(geometry, InsertionMode::kTipExtender, "net self-anchoring force");
  return TipInsertionForce(depth, geometry, media) - SideAnchorForce(depth, geometry, media);
}

std::optional<double> CriticalDepth(const AnchorGeometry& geometry, const MediaProfile& media) {
  RequireMode(geometry, InsertionMode::kTipExtender, "critical depth");
  geometry.Validate();
  const double limit = 10.0 * geometry.length * std::cos(geometry.tilt);
  const double first_step = std::min(1e-3, limit);
  return numerics::FirstNonPositive(
      [&](double h) { return NetSelfAnchorForce(h, geometry, media); }, first_step, limit,
      kCriticalDepthTolerance);
}

double PeakNetSelfAnchorForce(const AnchorGeometry& geometry, const MediaProfile& media) {
  RequireMode(geometry, InsertionMode::kTipExtender, "peak net force");
  const double deployed = geometry.DeployedDepth();
  // F_net(h) = a h - b h^2 with both coefficients read off at unit depth.
  const double a = TipInsertionForce(1.0, geometry, media);
  const double b = SideAnchorForce(1.0, geometry, media);
  double depth = deployed;
  if (b > 0.0) depth = std::min(deployed, a / (2.0 * b));
  return std::max(0.0, NetSelfAnchorForce(depth, geometry, media));
}

namespace integrated {
namespace {

struct SplitForces {
  double tip = 0.0;      // upward resistance on the disc
  double lateral = 0.0;  // downward resistance on the wall (as a magnitude)
};

SplitForces Integrate(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                      double element_size) {
  RequireDepth(depth);
  const auto elements = DiscretizeAnchor(geometry, AxialLength(depth, geometry), element_size);
  std::vector<SurfaceElement> tip;
  std::vector<SurfaceElement> lateral;
  for (const SurfaceElement& e : elements) {
    (e.part == SurfacePart::kTip ? tip : lateral).push_back(e);
  }
  SplitForces forces;
  forces.tip = IntegrateVerticalForce(tip, media);
  if (!lateral.empty()) forces.lateral = -IntegrateVerticalForce(lateral, media);
  // The element sums act along the growth axis; report vertical components.
  const double projection = std::cos(geometry.tilt);
  forces.tip *= projection;
  forces.lateral *= projection;
  return forces;
}

}  // namespace

double TipInsertionForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                         double element_size) {
  return Integrate(depth, geometry, media, element_size).tip;
}

double SideAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                       double element_size) {
  return geometry.ExtractionMultiplier() *
         Integrate(depth, geometry, media, element_size).lateral;
}

double RigidInsertionForce(double depth, const AnchorGeometry& geometry,
                           const MediaProfile& media, double element_size) {
  RequireMode(geometry, InsertionMode::kRigidIntruder, "rigid insertion force");
  const SplitForces forces = Integrate(depth, geometry, media, element_size);
  return forces.tip + forces.lateral / media.side_history_ratio;
}

double NetSelfAnchorForce(double depth, const AnchorGeometry& geometry, const MediaProfile& media,
                          double element_size) {
  RequireMode(geometry, InsertionMode::kTipExtender, "net self-anchoring force");
  const SplitForces forces = Integrate(depth, geometry, media, element_size);
  return forces.tip - geometry.ExtractionMultiplier() * forces.lateral;
}

}  // namespace integrated

ForceReport BuildForceReport(const AnchorGeometry& geometry, const MediaProfile& media,
                             double depth_step) {
  geometry.Validate();
  if (!(depth_step > 0.0)) throw ContractError("depth step must be positive");
  const double deployed = geometry.DeployedDepth();
  const auto steps = std::max(1, static_cast<int>(std::ceil(deployed / depth_step)));
  const bool tip_extender = geometry.mode == InsertionMode::kTipExtender;

  ForceReport report;
  report.depths.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    const double depth = i == steps ? deployed : deployed * i / steps;
    const double insertion = tip_extender ? TipInsertionForce(depth, geometry, media)
                                          : RigidInsertionForce(depth, geometry, media);
    double extraction = SideAnchorForce(depth, geometry, media);
    if (!tip_extender) extraction /= media.side_history_ratio;
    report.depths.push_back(depth);
    report.insertion.push_back(insertion);
    report.extraction.push_back(extraction);
    report.net.push_back(tip_extender ? NetSelfAnchorForce(depth, geometry, media) : insertion);
  }
  report.peak_insertion = *std::max_element(report.insertion.begin(), report.insertion.end());
  report.peak_extraction = *std::max_element(report.extraction.begin(), report.extraction.end());
  if (tip_extender) report.critical_depth = CriticalDepth(geometry, media);
  if (report.peak_insertion > 0.0) {
    report.extraction_to_insertion = report.peak_extraction / report.peak_insertion;
  }
  return report;
}

AngledPairForces AngledPairForce(double tilt, const AnchorGeometry& geometry,
                                 const MediaProfile& media) {
  if (!(tilt >= 0.0 && tilt <= kMaxModelledTilt + 1e-12)) {
    throw RangeError("pair tilt " + std::to_string(RadiansToDegrees(tilt)) +
                     " deg is outside the modelled range [0, 60] deg");
  }
  AnchorGeometry root = geometry;
  root.tilt = std::min(tilt, kMaxModelledTilt);
  const double depth = root.DeployedDepth();
  const double insertion = root.mode == InsertionMode::kTipExtender
                               ? TipInsertionForce(depth, root, media)
                               : RigidInsertionForce(depth, root, media);
  return {2.0 * insertion, 2.0 * PeakExtractionForce(root, media)};
}

DiameterSweep SweepDiameter(std::span<const double> diameters, double depth,
                            const MediaProfile& media, const AnchorGeometry& base) {
  const std::set<double> distinct(diameters.begin(), diameters.end());
  if (distinct.size() < 3) {
    throw ContractError("diameter sweep needs at least three distinct diameters");
  }
  if (!(depth > 0.0)) throw ContractError("diameter sweep depth must be positive");

  DiameterSweep sweep;
  std::vector<double> log_d;
  std::vector<double> log_insertion;
  std::vector<double> log_extraction;
  for (double diameter : diameters) {
    if (!(diameter > 0.0)) throw ContractError("sweep diameters must be positive");
    AnchorGeometry root = base;
    root.radius = 0.5 * diameter;
    root.length = AxialLength(depth, root);
    root.mode = InsertionMode::kTipExtender;
    DiameterSweepRow row;
    row.diameter = diameter;
    row.insertion = TipInsertionForce(depth, root, media);
    row.extraction = PeakExtractionForce(root, media);
    row.ratio = row.extraction / row.insertion;
    sweep.rows.push_back(row);
    log_d.push_back(std::log(diameter));
    log_insertion.push_back(std::log(row.insertion));
    log_extraction.push_back(std::log(row.extraction));
  }
  sweep.insertion_exponent = numerics::FitLine(log_d, log_insertion).slope;
  sweep.extraction_exponent = numerics::FitLine(log_d, log_extraction).slope;
  return sweep;
}

}  // namespace tipanchor
