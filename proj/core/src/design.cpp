#include "tipanchor/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "tipanchor/anchor_model.hpp"
#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {
namespace {

constexpr double kTieTolerance = 1e-12;

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

std::string FormatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string EncodeRoot(const AnchorGeometry& root) {
  return "d" + FormatNumber(root.Diameter() * 1e3) + "/L" + FormatNumber(root.length * 1e2) +
         "/t" + FormatNumber(RadiansToDegrees(root.tilt)) + "/k" +
         FormatNumber(root.ExtractionMultiplier());
}

bool SameRoot(const AnchorGeometry& a, const AnchorGeometry& b) {
  return a.radius == b.radius && a.length == b.length && a.tilt == b.tilt &&
         a.ExtractionMultiplier() == b.ExtractionMultiplier() && a.mode == b.mode;
}

std::vector<double> SortedUnique(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// One point of the root grid with its precomputed contributions.
struct RootType {
  AnchorGeometry geometry;
  double required = 0.0;    // peak net force during growth
  double extraction = 0.0;  // peak extraction when deployed
  double area = 0.0;
};

struct Candidate {
  std::vector<std::vector<int>> stages;  // type indices, ascending within a stage
  int roots = 0;
  double extraction = 0.0;
  double area = 0.0;
  double margin = 0.0;
};

// True when `a` should be preferred over `b`.
bool Better(const Candidate& a, const Candidate& b) {
  if (!NearlyEqual(a.extraction, b.extraction)) return a.extraction > b.extraction;
  if (a.roots != b.roots) return a.roots < b.roots;
  if (!NearlyEqual(a.area, b.area)) return a.area < b.area;
  return a.stages < b.stages;
}

AnchorConfig Materialize(const Candidate& candidate, const std::vector<RootType>& types,
                         double device_weight) {
  AnchorConfig config;
  config.device_weight = device_weight;
  for (const auto& stage : candidate.stages) {
    std::vector<std::size_t> indices;
    for (int t : stage) {
      indices.push_back(config.roots.size());
      config.roots.push_back(types[static_cast<std::size_t>(t)].geometry);
    }
    config.stages.push_back(std::move(indices));
  }
  return config;
}

class GridSearch {
 public:
  GridSearch(const std::vector<RootType>& types, const DesignConstraints& constraints)
      : types_(types), constraints_(constraints), counts_(types.size(), 0) {
    for (const RootType& t : types_) max_extraction_ = std::max(max_extraction_, t.extraction);
  }

  void Run() {
    stages_.emplace_back();
    Extend(constraints_.device_weight, 0.0, 0.0);
  }

  const std::optional<Candidate>& best() const { return best_; }
  std::size_t examined() const { return examined_; }

 private:
  // Adds one more root to the open (last) stage. `hold_down` is what the
  // open stage may draw on; `stage_required` what it already needs.
  void Extend(double hold_down, double stage_required, double stage_extraction) {
    const int lowest = stages_.back().empty() ? 0 : stages_.back().back();
    for (int t = static_cast<int>(types_.size()) - 1; t >= lowest; --t) {
      const RootType& type = types_[static_cast<std::size_t>(t)];
      if (roots_ + 1 > constraints_.max_roots) return;
      if (constraints_.max_total_cross_section &&
          area_ + type.area > *constraints_.max_total_cross_section * (1.0 + kTieTolerance)) {
        continue;
      }
      const double required = stage_required + type.required;
      if (required > hold_down) continue;
      const double bound = extraction_ + type.extraction +
                           (constraints_.max_roots - roots_ - 1) * max_extraction_;
      if (best_ && bound < best_->extraction * (1.0 - 1e-9)) continue;

      stages_.back().push_back(t);
      ++counts_[static_cast<std::size_t>(t)];
      ++roots_;
      extraction_ += type.extraction;
      area_ += type.area;

      Record(hold_down - required);
      if (static_cast<int>(stages_.size()) < constraints_.max_stages) {
        stages_.emplace_back();
        const double next_hold = hold_down + stage_extraction + type.extraction;
        Extend(next_hold, 0.0, 0.0);
        stages_.pop_back();
      }
      Extend(hold_down, required, stage_extraction + type.extraction);

      area_ -= type.area;
      extraction_ -= type.extraction;
      --roots_;
      --counts_[static_cast<std::size_t>(t)];
      stages_.back().pop_back();
    }
  }

  void Record(double open_margin) {
    ++examined_;
    Candidate candidate;
    candidate.stages = stages_;
    candidate.roots = roots_;
    // Canonical sums so permutations of the same roots tie exactly.
    for (std::size_t t = 0; t < types_.size(); ++t) {
      candidate.extraction += counts_[t] * types_[t].extraction;
      candidate.area += counts_[t] * types_[t].area;
    }
    candidate.margin = open_margin;
    if (!best_ || Better(candidate, *best_)) best_ = std::move(candidate);
  }

  const std::vector<RootType>& types_;
  const DesignConstraints& constraints_;
  std::vector<int> counts_;
  std::vector<std::vector<int>> stages_;
  int roots_ = 0;
  double extraction_ = 0.0;
  double area_ = 0.0;
  double max_extraction_ = 0.0;
  std::optional<Candidate> best_;
  std::size_t examined_ = 0;
};

}  // namespace

void AnchorConfig::Validate() const {
  if (!(device_weight >= 0.0) || !std::isfinite(device_weight)) {
    throw ContractError("device weight must be >= 0");
  }
  if (roots.empty()) throw ContractError("configuration has no roots");
  if (stages.empty()) throw ContractError("configuration has no stages");
  std::vector<int> seen(roots.size(), 0);
  for (std::size_t s = 0; s < stages.size(); ++s) {
    if (stages[s].empty()) throw ContractError("stage " + std::to_string(s + 1) + " is empty");
    for (std::size_t index : stages[s]) {
      if (index >= roots.size()) {
        throw ContractError("stage " + std::to_string(s + 1) + " names unknown root " +
                            std::to_string(index));
      }
      ++seen[index];
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (seen[i] != 1) {
      throw ContractError("root " + std::to_string(i) + " appears in " + std::to_string(seen[i]) +
                          " stages; expected exactly one");
    }
    roots[i].Validate();
    if (roots[i].tilt > kMaxModelledTilt + 1e-12) {
      throw ContractError("root " + std::to_string(i) + " tilt exceeds 60 degrees");
    }
    if (roots[i].mode != InsertionMode::kTipExtender) {
      throw ContractError("root " + std::to_string(i) + " is not a tip extender");
    }
  }
}

AnchorConfig AnchorConfig::SingleStage(std::vector<AnchorGeometry> roots, double device_weight) {
  AnchorConfig config;
  config.device_weight = device_weight;
  std::vector<std::size_t> stage(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) stage[i] = i;
  config.roots = std::move(roots);
  config.stages.push_back(std::move(stage));
  return config;
}

ConfigMetrics EvaluateConfig(const AnchorConfig& config, const MediaProfile& media) {
  media.Zeta();
  config.Validate();

  std::vector<double> required(config.roots.size());
  std::vector<double> extraction(config.roots.size());
  for (std::size_t i = 0; i < config.roots.size(); ++i) {
    required[i] = PeakNetSelfAnchorForce(config.roots[i], media);
    extraction[i] = PeakExtractionForce(config.roots[i], media);
  }

  ConfigMetrics metrics;
  metrics.feasible = true;
  metrics.worst_stage_margin = std::numeric_limits<double>::infinity();
  double hold_down = config.device_weight;
  for (const auto& stage : config.stages) {
    double stage_required = 0.0;
    double stage_extraction = 0.0;
    for (std::size_t index : stage) {
      stage_required += required[index];
      stage_extraction += extraction[index];
    }
    metrics.required_reaction.push_back(stage_required);
    metrics.available_hold_down.push_back(hold_down);
    metrics.worst_stage_margin = std::min(metrics.worst_stage_margin, hold_down - stage_required);
    if (stage_required > hold_down) metrics.feasible = false;
    hold_down += stage_extraction;
  }
  for (double e : extraction) metrics.total_peak_extraction += e;
  if (config.device_weight > 0.0) {
    metrics.anchoring_to_weight = metrics.total_peak_extraction / config.device_weight;
  }
  return metrics;
}

std::vector<SplitRow> SplitComparison(double total_area, int max_count, double depth,
                                      const MediaProfile& media, const AnchorGeometry& skin) {
  if (max_count < 1) throw ContractError("split comparison needs N >= 1");
  if (!(total_area > 0.0)) throw ContractError("split comparison needs a positive total area");
  if (!(depth > 0.0)) throw ContractError("split comparison needs a positive depth");

  std::vector<SplitRow> rows;
  for (int n = 1; n <= max_count; ++n) {
    AnchorGeometry root = skin;
    root.radius = std::sqrt(total_area / (n * kPi));
    root.length = depth;
    root.tilt = 0.0;
    root.mode = InsertionMode::kTipExtender;
    SplitRow row;
    row.count = n;
    row.radius = root.radius;
    row.insertion = n * TipInsertionForce(depth, root, media);
    row.extraction = n * PeakExtractionForce(root, media);
    row.ratio = row.extraction / row.insertion;
    row.ratio_vs_single = rows.empty() ? 1.0 : row.ratio / rows.front().ratio;
    rows.push_back(row);
  }
  return rows;
}

void DesignConstraints::Validate() const {
  if (max_roots < 1) throw ContractError("max roots must be >= 1");
  if (max_stages < 1) throw ContractError("max stages must be >= 1");
  if (diameters.empty() || lengths.empty() || tilts.empty() || hair_factors.empty()) {
    throw ContractError("every design grid axis needs at least one value");
  }
  for (double d : diameters) {
    if (!(d > 0.0)) throw ContractError("grid diameters must be positive");
  }
  for (double l : lengths) {
    if (!(l > 0.0)) throw ContractError("grid lengths must be positive");
  }
  for (double t : tilts) {
    if (!(t >= 0.0 && t <= kMaxModelledTilt + 1e-12)) {
      throw ContractError("grid tilts must lie in [0, 60] degrees");
    }
  }
  for (double k : hair_factors) {
    if (!(k >= 1.0)) throw ContractError("grid hair factors must be >= 1");
  }
  if (!(device_weight >= 0.0)) throw ContractError("device weight must be >= 0");
  if (max_total_cross_section && !(*max_total_cross_section > 0.0)) {
    throw ContractError("cross-section budget must be positive");
  }
}

OptimizationResult OptimizeConfig(const DesignConstraints& constraints,
                                  const MediaProfile& media) {
  constraints.Validate();
  media.Zeta();

  std::vector<RootType> types;
  for (double d : SortedUnique(constraints.diameters)) {
    for (double l : SortedUnique(constraints.lengths)) {
      for (double t : SortedUnique(constraints.tilts)) {
        for (double k : SortedUnique(constraints.hair_factors)) {
          AnchorGeometry g = k > 1.0 ? AnchorGeometry::HairyTipExtender(0.5 * d, l, k, t)
                                     : AnchorGeometry::TipExtender(0.5 * d, l, t);
          if (constraints.max_total_cross_section &&
              g.CrossSection() > *constraints.max_total_cross_section * (1.0 + kTieTolerance)) {
            continue;
          }
          types.push_back({g, PeakNetSelfAnchorForce(g, media), PeakExtractionForce(g, media),
                           g.CrossSection()});
        }
      }
    }
  }
  if (types.empty()) throw ContractError("no root on the grid fits the cross-section budget");

  OptimizationResult result;
  GridSearch search(types, constraints);
  search.Run();
  result.candidates_examined = search.examined();

  Candidate chosen;
  if (search.best()) {
    chosen = *search.best();
    result.feasible = true;
  } else {
    // Every design's first stage holds at least one root, so no margin can
    // beat the single root with the smallest reaction requirement.
    std::size_t pick = 0;
    for (std::size_t t = 1; t < types.size(); ++t) {
      const double a = types[t].required;
      const double b = types[pick].required;
      if (a < b && !NearlyEqual(a, b)) pick = t;
      else if (NearlyEqual(a, b) && types[t].area < types[pick].area &&
               !NearlyEqual(types[t].area, types[pick].area)) {
        pick = t;
      }
    }
    chosen.stages = {{static_cast<int>(pick)}};
    chosen.roots = 1;
  }
  result.config = Materialize(chosen, types, constraints.device_weight);
  result.metrics = EvaluateConfig(result.config, media);
  result.encoding = EncodeConfig(result.config);
  return result;
}

std::string EncodeConfig(const AnchorConfig& config) {
  std::string out;
  for (const auto& stage : config.stages) {
    out += '[';
    for (std::size_t i = 0; i < stage.size();) {
      std::size_t run = 1;
      while (i + run < stage.size() &&
             SameRoot(config.roots[stage[i]], config.roots[stage[i + run]])) {
        ++run;
      }
      if (i > 0) out += ' ';
      out += EncodeRoot(config.roots[stage[i]]);
      if (run > 1) out += " x" + std::to_string(run);
      i += run;
    }
    out += ']';
  }
  return out;
}

}  // namespace tipanchor
