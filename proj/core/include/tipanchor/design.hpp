#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tipanchor/geometry.hpp"
#include "tipanchor/media.hpp"

namespace tipanchor {

// Multi-root design. `stages` holds indices into `roots`, in deployment
// order; roots in one stage deploy together.
struct AnchorConfig {
  std::vector<AnchorGeometry> roots;
  std::vector<std::vector<std::size_t>> stages;
  double device_weight = 0.0;  // [N]

  // Every root in exactly one non-empty stage, tilts in [0, 60 deg], tip
  // extenders only, weight >= 0.
  void Validate() const;

  // One stage holding every root.
  static AnchorConfig SingleStage(std::vector<AnchorGeometry> roots, double device_weight);
};

struct ConfigMetrics {
  std::vector<double> required_reaction;   // per stage [N]
  std::vector<double> available_hold_down; // per stage [N]
  double total_peak_extraction = 0.0;
  double worst_stage_margin = 0.0;         // min(available - required)
  std::optional<double> anchoring_to_weight;
  bool feasible = false;
};

ConfigMetrics EvaluateConfig(const AnchorConfig& config, const MediaProfile& media);

struct SplitRow {
  int count = 0;
  double radius = 0.0;
  double insertion = 0.0;   // total constrained insertion [N]
  double extraction = 0.0;  // total peak extraction [N]
  double ratio = 0.0;
  double ratio_vs_single = 0.0;
};

// Splits `total_area` of cross-section into n = 1..max_count identical
// vertical roots grown to `depth`. `skin` supplies the skin and hair factor.
std::vector<SplitRow> SplitComparison(double total_area, int max_count, double depth,
                                      const MediaProfile& media, const AnchorGeometry& skin = {});

struct DesignConstraints {
  int max_roots = 6;
  int max_stages = 3;
  std::vector<double> diameters{0.007, 0.010, 0.013, 0.016, 0.020};
  std::vector<double> lengths{0.15, 0.30, 0.45};
  std::vector<double> tilts{0.0, 0.2617993877991494};  // 0 and 15 degrees
  std::vector<double> hair_factors{1.0, 1.4};          // 1 = hairless
  double device_weight = 2.9;
  std::optional<double> max_total_cross_section;       // [m^2]

  void Validate() const;
};

struct OptimizationResult {
  bool feasible = false;
  AnchorConfig config;  // best design, or best-margin infeasible candidate
  ConfigMetrics metrics;
  std::string encoding;
  std::size_t candidates_examined = 0;
};

// Exhaustive search over the constraint grid maximising anchoring-to-weight
// among feasible designs. Ties go to fewer roots, then smaller total cross
// section, then the lexicographically smaller encoding.
OptimizationResult OptimizeConfig(const DesignConstraints& constraints, const MediaProfile& media);

// Canonical text form, e.g. "[d13/L45/t0/k1.4 x3][d20/L45/t0/k1.4]".
std::string EncodeConfig(const AnchorConfig& config);

}  // namespace tipanchor
