#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"

namespace tipanchor {

enum class Regime {
  kRigidInsertion,
  kConstrainedTipInsertion,
  kExtractionPeak,
  kSelfAnchorWeight,
};

std::string_view RegimeName(Regime regime);
std::optional<Regime> ParseRegime(std::string_view name);

struct CalibrationSample {
  double depth = 0.0;  // [m]
  double force = 0.0;  // [N]
  Regime regime = Regime::kRigidInsertion;
};

struct ScaleFit {
  double scale_factor = 0.0;
  double residual_rms = 0.0;
};

// Least-squares zeta for rigid_insertion or constrained_tip_insertion
// samples. The model is linear in zeta, so the fit is closed-form.
ScaleFit FitScaleFactor(std::span<const CalibrationSample> samples, const AnchorGeometry& geometry,
                        const MediaProfile& media);

struct ExtractionPeaks {
  double intruder = 0.0;
  double hairless = 0.0;
  double hairy = 0.0;
};

struct HistoryHairFit {
  double side_history_ratio = 1.0;  // rho = hairless / intruder
  double hair_factor = 1.0;         // kappa = hairy / hairless
  bool hair_below_unity = false;    // hairs reduced extraction
};

HistoryHairFit FitHistoryAndHair(const ExtractionPeaks& peaks);

// Per-device trial peaks; each list is averaged before taking ratios.
HistoryHairFit FitHistoryAndHair(std::span<const double> intruder_trials,
                                 std::span<const double> hairless_trials,
                                 std::span<const double> hairy_trials);

struct TipSideFit {
  double tip_coefficient = 0.0;   // k_t [N/m^3]
  double side_coefficient = 0.0;  // k_s [N/m^3]
  double ratio = 0.0;             // k_t / k_s
  std::optional<double> critical_depth;
  double residual_rms = 0.0;
  bool crossover_observed = false;
  bool underdetermined = false;  // exactly two samples: no noise estimate
};

// Least squares of F_net(h) = k_t pi r^2 h cos(theta) - kappa k_s pi r h^2
// on self_anchor_weight samples.
TipSideFit FitTipSideRatio(std::span<const CalibrationSample> samples,
                           const AnchorGeometry& geometry);

// Sets zeta and rescales the extraction branch so the profile reproduces the
// fitted k_t and k_s at the geometry's orientation.
MediaProfile ApplyTipSideFit(const MediaProfile& media, const TipSideFit& fit,
                             const AnchorGeometry& geometry);

struct SideBranchFit {
  double side_coefficient = 0.0;  // k_s [N/m^3]
  double branch_scale = 1.0;      // factor applied to the extraction branch
  double residual_rms = 0.0;
};

// With zeta and rho fixed, fits k_s to rigid_insertion samples from the wall
// term F - F_t = pi r k_s z^2 / rho.
SideBranchFit FitRigidSideBranch(std::span<const CalibrationSample> samples,
                                 const AnchorGeometry& geometry, const MediaProfile& media);

MediaProfile ApplySideBranchFit(const MediaProfile& media, const SideBranchFit& fit);

}  // namespace tipanchor
