#include "tipanchor/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "tipanchor/anchor_model.hpp"
#include "tipanchor/errors.hpp"
#include "tipanchor/rft.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {
namespace {

constexpr std::array<std::string_view, 4> kRegimeNames{
    "rigid_insertion", "constrained_tip_insertion", "extraction_peak", "self_anchor_weight"};

// Validates a single-regime sample list and returns it sorted by (depth,
// force) so every fit is independent of input order.
std::vector<CalibrationSample> Prepare(std::span<const CalibrationSample> samples,
                                       std::initializer_list<Regime> accepted,
                                       std::size_t minimum, const char* fit) {
  if (samples.size() < minimum) {
    throw ContractError(std::string(fit) + " needs at least " + std::to_string(minimum) +
                        " samples, got " + std::to_string(samples.size()));
  }
  const Regime regime = samples.front().regime;
  if (std::find(accepted.begin(), accepted.end(), regime) == accepted.end()) {
    throw ContractError(std::string(fit) + " does not accept " +
                        std::string(RegimeName(regime)) + " samples");
  }
  for (const CalibrationSample& s : samples) {
    if (s.regime != regime) {
      throw ContractError(std::string(fit) + " rejects mixed-regime samples (" +
                          std::string(RegimeName(regime)) + " and " +
                          std::string(RegimeName(s.regime)) + ")");
    }
    if (!(s.depth >= 0.0) || !std::isfinite(s.depth) || !std::isfinite(s.force)) {
      throw ContractError(std::string(fit) + ": sample depth must be >= 0 and force finite");
    }
  }
  std::vector<CalibrationSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.force < b.force;
  });
  return sorted;
}

std::size_t DistinctDepths(const std::vector<CalibrationSample>& samples) {
  std::set<double> depths;
  for (const auto& s : samples) depths.insert(s.depth);
  return depths.size();
}

double Mean(std::span<const double> values, const char* label) {
  if (values.empty()) throw ContractError(std::string("no ") + label + " trials");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

std::string_view RegimeName(Regime regime) { return kRegimeNames[static_cast<int>(regime)]; }

std::optional<Regime> ParseRegime(std::string_view name) {
  for (std::size_t i = 0; i < kRegimeNames.size(); ++i) {
    if (kRegimeNames[i] == name) return static_cast<Regime>(i);
  }
  return std::nullopt;
}

ScaleFit FitScaleFactor(std::span<const CalibrationSample> samples, const AnchorGeometry& geometry,
                        const MediaProfile& media) {
  const auto sorted = Prepare(samples,
                              {Regime::kRigidInsertion, Regime::kConstrainedTipInsertion}, 3,
                              "scale-factor fit");
  const bool rigid = sorted.front().regime == Regime::kRigidInsertion;
  AnchorGeometry body = geometry;
  body.mode = rigid ? InsertionMode::kRigidIntruder : InsertionMode::kTipExtender;
  const MediaProfile unit = media.WithScaleFactor(1.0);

  std::vector<double> model;
  model.reserve(sorted.size());
  double mm = 0.0;
  double my = 0.0;
  for (const auto& s : sorted) {
    const double m = rigid ? RigidInsertionForce(s.depth, body, unit)
                           : TipInsertionForce(s.depth, body, unit);
    model.push_back(m);
    mm += m * m;
    my += m * s.force;
  }
  if (!(mm > 0.0)) {
    throw DegenerateFitError("scale-factor fit is degenerate: every model force is zero");
  }
  if (DistinctDepths(sorted) < 3) {
    throw ContractError("scale-factor fit needs samples at three distinct depths");
  }
  ScaleFit fit;
  fit.scale_factor = my / mm;
  double squares = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double r = sorted[i].force - fit.scale_factor * model[i];
    squares += r * r;
  }
  fit.residual_rms = std::sqrt(squares / static_cast<double>(sorted.size()));
  if (!(fit.scale_factor > 0.0)) {
    throw DegenerateFitError("scale-factor fit produced a non-positive zeta");
  }
  return fit;
}

HistoryHairFit FitHistoryAndHair(const ExtractionPeaks& peaks) {
  if (!(peaks.intruder > 0.0) || !(peaks.hairless > 0.0) || !(peaks.hairy > 0.0)) {
    throw ContractError("extraction peaks must all be positive");
  }
  HistoryHairFit fit;
  fit.side_history_ratio = peaks.hairless / peaks.intruder;
  fit.hair_factor = peaks.hairy / peaks.hairless;
  fit.hair_below_unity = fit.hair_factor < 1.0;
  return fit;
}

HistoryHairFit FitHistoryAndHair(std::span<const double> intruder_trials,
                                 std::span<const double> hairless_trials,
                                 std::span<const double> hairy_trials) {
  return FitHistoryAndHair({Mean(intruder_trials, "intruder"), Mean(hairless_trials, "hairless"),
                            Mean(hairy_trials, "hairy")});
}

TipSideFit FitTipSideRatio(std::span<const CalibrationSample> samples,
                           const AnchorGeometry& geometry) {
  geometry.Validate();
  const auto sorted = Prepare(samples, {Regime::kSelfAnchorWeight}, 2, "tip/side ratio fit");
  const double r = geometry.radius;
  const double tip_area = kPi * r * r * std::cos(geometry.tilt);
  const double wall = geometry.ExtractionMultiplier() * kPi * r;

  // Normal equations for F = k_t T - k_s S with T = tip_area h, S = wall h^2.
  double tt = 0.0, ts = 0.0, ss = 0.0, ty = 0.0, sy = 0.0;
  bool positive = false;
  bool non_positive = false;
  for (const auto& s : sorted) {
    const double t = tip_area * s.depth;
    const double w = wall * s.depth * s.depth;
    tt += t * t;
    ts += t * w;
    ss += w * w;
    ty += t * s.force;
    sy += w * s.force;
    (s.force > 0.0 ? positive : non_positive) = true;
  }
  const double det = tt * ss - ts * ts;
  if (!(std::abs(det) > 1e-12 * tt * ss)) {
    throw DegenerateFitError("tip/side ratio fit needs two distinct non-zero depths");
  }
  TipSideFit fit;
  fit.tip_coefficient = (ty * ss - sy * ts) / det;
  fit.side_coefficient = (ty * ts - sy * tt) / det;
  fit.ratio = fit.side_coefficient != 0.0 ? fit.tip_coefficient / fit.side_coefficient
                                          : std::numeric_limits<double>::infinity();
  if (fit.tip_coefficient > 0.0 && fit.side_coefficient > 0.0) {
    fit.critical_depth = fit.tip_coefficient * tip_area / (fit.side_coefficient * wall);
  }
  double squares = 0.0;
  for (const auto& s : sorted) {
    const double model = fit.tip_coefficient * tip_area * s.depth -
                         fit.side_coefficient * wall * s.depth * s.depth;
    squares += (s.force - model) * (s.force - model);
  }
  fit.residual_rms = std::sqrt(squares / static_cast<double>(sorted.size()));
  fit.crossover_observed = positive && non_positive;
  fit.underdetermined = DistinctDepths(sorted) < 3;
  return fit;
}

MediaProfile ApplyTipSideFit(const MediaProfile& media, const TipSideFit& fit,
                             const AnchorGeometry& geometry) {
  if (!(fit.tip_coefficient > 0.0) || !(fit.side_coefficient >= 0.0)) {
    throw ContractError("tip/side fit must have k_t > 0 and k_s >= 0 to update a media profile");
  }
  const Orientation tip = TipOrientation(geometry.tilt);
  const Orientation side = SideOrientation(geometry.tilt);
  const double raw_tip = media.stress_table.Interpolate(tip.attack, tip.intrusion).alpha_z;
  const double raw_side = media.stress_table.Interpolate(side.attack, side.intrusion).alpha_z;
  if (!(raw_tip > 0.0) || !(raw_side > 0.0)) {
    throw ConfigurationError("stress table has no resistance at the tip or side orientation");
  }
  const double zeta = fit.tip_coefficient / raw_tip;
  MediaProfile calibrated = media.WithScaleFactor(zeta);
  calibrated.stress_table =
      media.stress_table.WithScaledExtractionBranch(fit.side_coefficient / (zeta * raw_side));
  return calibrated;
}

SideBranchFit FitRigidSideBranch(std::span<const CalibrationSample> samples,
                                 const AnchorGeometry& geometry, const MediaProfile& media) {
  const auto sorted = Prepare(samples, {Regime::kRigidInsertion}, 3, "side-branch fit");
  if (DistinctDepths(sorted) < 3) {
    throw ContractError("side-branch fit needs samples at three distinct depths");
  }
  AnchorGeometry body = geometry;
  body.mode = InsertionMode::kRigidIntruder;
  const double wall = kPi * body.radius / media.side_history_ratio;

  double ww = 0.0;
  double wy = 0.0;
  for (const auto& s : sorted) {
    const double w = wall * s.depth * s.depth;
    ww += w * w;
    wy += w * (s.force - TipInsertionForce(s.depth, body, media));
  }
  if (!(ww > 0.0)) throw DegenerateFitError("side-branch fit is degenerate: all depths are zero");

  SideBranchFit fit;
  fit.side_coefficient = wy / ww;
  if (!(fit.side_coefficient >= 0.0)) {
    throw DegenerateFitError("side-branch fit produced a negative wall coefficient");
  }
  const double current = SideCoefficient(body, media);
  if (!(current > 0.0)) {
    throw ConfigurationError("stress table has no resistance at the side orientation");
  }
  fit.branch_scale = fit.side_coefficient / current;
  double squares = 0.0;
  for (const auto& s : sorted) {
    const double model =
        TipInsertionForce(s.depth, body, media) + fit.side_coefficient * wall * s.depth * s.depth;
    squares += (s.force - model) * (s.force - model);
  }
  fit.residual_rms = std::sqrt(squares / static_cast<double>(sorted.size()));
  return fit;
}

MediaProfile ApplySideBranchFit(const MediaProfile& media, const SideBranchFit& fit) {
  MediaProfile calibrated = media;
  calibrated.stress_table = media.stress_table.WithScaledExtractionBranch(fit.branch_scale);
  return calibrated;
}

}  // namespace tipanchor
