#include "tipanchor/cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "tipanchor/anchor_model.hpp"
#include "tipanchor/calibration.hpp"
#include "tipanchor/cli/formats.hpp"
#include "tipanchor/design.hpp"
#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::array<std::pair<const char*, CommandKind>, 7> kCommands{{
    {"simulate", CommandKind::kSimulate},
    {"calibrate", CommandKind::kCalibrate},
    {"critical-depth", CommandKind::kCriticalDepth},
    {"sweep-diameter", CommandKind::kSweepDiameter},
    {"sweep-angle", CommandKind::kSweepAngle},
    {"evaluate", CommandKind::kEvaluate},
    {"optimize", CommandKind::kOptimize},
}};

std::string Text(double value) { return FormatSummaryNumber(value); }

std::string Text(const std::optional<double>& value) {
  return value ? FormatSummaryNumber(*value) : "none";
}

std::string DescribeRoot(const AnchorGeometry& g) {
  AnchorConfig single = AnchorConfig::SingleStage({g}, 0.0);
  std::string text = EncodeConfig(single);
  text = text.substr(1, text.size() - 2);
  if (g.mode == InsertionMode::kRigidIntruder) text += " rigid";
  return text;
}

class Command {
 public:
  Command(const json& scenario, fs::path base_dir, const Overrides& overrides)
      : scenario_(scenario),
        fields_(scenario, "scenario"),
        base_dir_(std::move(base_dir)),
        overrides_(overrides) {}

  fs::path Resolve(const std::string& path) const {
    const fs::path p(path);
    return p.is_absolute() ? p : base_dir_ / p;
  }

  MediaProfile Media() const {
    if (overrides_.media) return LoadMediaProfile(*overrides_.media);
    return LoadMediaProfile(Resolve(fields_.Text("media")));
  }

  AnchorGeometry Geometry() const {
    return ParseGeometry(fields_.Object("geometry"), "scenario.geometry");
  }

  double ElementSize() const {
    const double size =
        overrides_.element_size ? *overrides_.element_size
                                : fields_.Number("element_size_m", kDefaultElementSize);
    if (!(size > 0.0)) throw ParseError("scenario.element_size_m: must be positive");
    return size;
  }

  double DepthStep() const {
    const double step = fields_.Number("depth_step_m", 1e-3);
    if (!(step > 0.0)) throw ParseError("scenario.depth_step_m: must be positive");
    return step;
  }

  const Fields& fields() const { return fields_; }
  const json& scenario() const { return scenario_; }

 private:
  const json& scenario_;
  Fields fields_;
  fs::path base_dir_;
  const Overrides& overrides_;
};

Report Simulate(const Command& command) {
  const MediaProfile media = command.Media();
  const AnchorGeometry geometry = command.Geometry();
  const ForceReport forces = BuildForceReport(geometry, media, command.DepthStep());

  // Closed forms against element integration at the deployed depth.
  const double element_size = command.ElementSize();
  const double depth = geometry.DeployedDepth();
  double worst = 0.0;
  auto compare = [&worst](double closed, double integrated) {
    if (closed != 0.0) worst = std::max(worst, std::abs(integrated - closed) / std::abs(closed));
  };
  if (geometry.mode == InsertionMode::kTipExtender) {
    compare(TipInsertionForce(depth, geometry, media),
            integrated::TipInsertionForce(depth, geometry, media, element_size));
    compare(SideAnchorForce(depth, geometry, media),
            integrated::SideAnchorForce(depth, geometry, media, element_size));
  } else {
    compare(RigidInsertionForce(depth, geometry, media),
            integrated::RigidInsertionForce(depth, geometry, media, element_size));
  }

  Report report;
  report.title = "simulate";
  report.summary = {
      {"command", "simulate"},
      {"media", media.name},
      {"root", DescribeRoot(geometry)},
      {"deployed_depth_m", Text(depth)},
      {"peak_insertion_N", Text(forces.peak_insertion)},
      {"peak_extraction_N", Text(forces.peak_extraction)},
      {"extraction_to_insertion", Text(forces.extraction_to_insertion)},
      {"critical_depth_m", Text(forces.critical_depth)},
      {"element_size_m", Text(element_size)},
      {"element_check_max_rel_error", Text(worst)},
  };
  report.table.columns = {"depth_m", "insertion_N", "extraction_N", "net_N"};
  for (std::size_t i = 0; i < forces.depths.size(); ++i) {
    report.table.rows.push_back(
        {forces.depths[i], forces.insertion[i], forces.extraction[i], forces.net[i]});
  }
  Chart chart{"Force vs depth", "depth [m]", "force [N]", {}, {}};
  chart.series.push_back({"insertion", forces.depths, forces.insertion});
  chart.series.push_back({"extraction", forces.depths, forces.extraction});
  chart.series.push_back({"net", forces.depths, forces.net});
  if (forces.critical_depth && *forces.critical_depth <= depth) {
    chart.markers.push_back(
        {*forces.critical_depth, 0.0, "h* = " + Text(*forces.critical_depth) + " m"});
  }
  report.chart = std::move(chart);
  return report;
}

Report CriticalDepthReport(const Command& command) {
  const MediaProfile media = command.Media();
  const AnchorGeometry geometry = command.Geometry();
  const std::optional<double> critical = CriticalDepth(geometry, media);

  const double extent = std::max(geometry.DeployedDepth(), critical ? 1.25 * *critical : 0.0);
  const auto steps = std::max(1, static_cast<int>(std::ceil(extent / command.DepthStep())));
  Report report;
  report.title = "critical-depth";
  report.summary = {
      {"command", "critical-depth"},
      {"media", media.name},
      {"root", DescribeRoot(geometry)},
      {"tip_coefficient_N_per_m3", Text(TipCoefficient(geometry, media))},
      {"side_coefficient_N_per_m3", Text(SideCoefficient(geometry, media))},
      {"peak_net_force_N", Text(PeakNetSelfAnchorForce(geometry, media))},
      {"critical_depth_m", Text(critical)},
  };
  report.table.columns = {"depth_m", "tip_N", "side_N", "net_N"};
  Series tip{"tip", {}, {}};
  Series side{"side", {}, {}};
  Series net{"net", {}, {}};
  for (int i = 0; i <= steps; ++i) {
    const double depth = i == steps ? extent : extent * i / steps;
    const double t = TipInsertionForce(depth, geometry, media);
    const double s = SideAnchorForce(depth, geometry, media);
    const double n = NetSelfAnchorForce(depth, geometry, media);
    report.table.rows.push_back({depth, t, s, n});
    for (auto* series : {&tip, &side, &net}) series->x.push_back(depth);
    tip.y.push_back(t);
    side.y.push_back(s);
    net.y.push_back(n);
  }
  Chart chart{"Net self-anchoring force", "depth [m]", "force [N]", {tip, side, net}, {}};
  if (critical) chart.markers.push_back({*critical, 0.0, "h* = " + Text(*critical) + " m"});
  report.chart = std::move(chart);
  return report;
}

Report SweepDiameterReport(const Command& command) {
  const MediaProfile media = command.Media();
  const Fields sweep(command.fields().Object("sweep"), "scenario.sweep");
  std::vector<double> diameters;
  if (sweep.Has("diameters_m")) {
    diameters = sweep.Numbers("diameters_m");
  } else {
    const double from = sweep.Number("from_m");
    const double to = sweep.Number("to_m");
    const int count = sweep.Integer("count", 8);
    if (count < 1) throw ParseError("scenario.sweep.count: must be >= 1");
    for (int i = 0; i < count; ++i) {
      diameters.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    }
  }
  const double depth = sweep.Number("depth_m");
  AnchorGeometry base;
  if (sweep.Text("skin", "hairless") == "hairy") {
    base.skin = Skin::kHairy;
    base.hair_factor = sweep.Number("hair_factor", 1.4);
  }
  Report report;
  report.title = "sweep-diameter";
  report.table.columns = {"diameter_m", "insertion_N", "extraction_N", "ratio"};
  if (diameters.empty()) {
    report.summary = {{"command", "sweep-diameter"}, {"media", media.name}, {"diameters", "0"}};
    return report;
  }
  const DiameterSweep result = SweepDiameter(diameters, depth, media, base);

  report.summary = {
      {"command", "sweep-diameter"},
      {"media", media.name},
      {"depth_m", Text(depth)},
      {"diameters", std::to_string(result.rows.size())},
      {"insertion_exponent", Text(result.insertion_exponent)},
      {"extraction_exponent", Text(result.extraction_exponent)},
  };
  Series insertion{"insertion", {}, {}};
  Series extraction{"extraction", {}, {}};
  for (const DiameterSweepRow& row : result.rows) {
    report.table.rows.push_back({row.diameter, row.insertion, row.extraction, row.ratio});
    insertion.x.push_back(row.diameter);
    insertion.y.push_back(row.insertion);
    extraction.x.push_back(row.diameter);
    extraction.y.push_back(row.extraction);
  }
  report.table.footer = std::vector<Cell>{std::string("exponent"), result.insertion_exponent,
                                          result.extraction_exponent, std::string()};
  report.chart = Chart{"Force vs diameter", "diameter [m]", "force [N]", {insertion, extraction},
                       {}};
  return report;
}

Report SweepAngleReport(const Command& command) {
  const MediaProfile media = command.Media();
  const AnchorGeometry geometry = command.Geometry();
  std::vector<double> angles{0.0, 15.0, 30.0, 45.0};
  if (command.fields().Has("angles_deg")) angles = command.fields().Numbers("angles_deg");

  Report report;
  report.title = "sweep-angle";
  report.table.columns = {"angle_deg", "insertion_N", "extraction_N", "ratio"};
  Series insertion{"pair insertion", {}, {}};
  Series extraction{"pair extraction", {}, {}};
  for (double angle : angles) {
    const AngledPairForces pair = AngledPairForce(DegreesToRadians(angle), geometry, media);
    report.table.rows.push_back({angle, pair.insertion, pair.extraction, pair.Ratio()});
    insertion.x.push_back(angle);
    insertion.y.push_back(pair.insertion);
    extraction.x.push_back(angle);
    extraction.y.push_back(pair.extraction);
  }
  report.summary = {
      {"command", "sweep-angle"},
      {"media", media.name},
      {"root", DescribeRoot(geometry)},
      {"angles", std::to_string(angles.size())},
  };
  report.chart = Chart{"Angled pair forces", "tilt from vertical [deg]", "vertical force [N]",
                       {insertion, extraction}, {}};
  return report;
}

void AddConfigSummary(Report& report, const AnchorConfig& config, const ConfigMetrics& metrics) {
  report.summary.push_back({"configuration", EncodeConfig(config)});
  report.summary.push_back({"device_weight_N", Text(config.device_weight)});
  report.summary.push_back({"feasible", metrics.feasible ? "yes" : "no"});
  report.summary.push_back({"total_peak_extraction_N", Text(metrics.total_peak_extraction)});
  report.summary.push_back({"anchoring_to_weight", Text(metrics.anchoring_to_weight)});
  report.summary.push_back({"worst_stage_margin_N", Text(metrics.worst_stage_margin)});

  report.table.columns = {"stage", "roots", "required_reaction_N", "available_hold_down_N",
                          "margin_N"};
  Series required{"required reaction", {}, {}};
  Series available{"available hold-down", {}, {}};
  for (std::size_t s = 0; s < config.stages.size(); ++s) {
    AnchorConfig stage_only;
    stage_only.roots = config.roots;
    stage_only.stages = {config.stages[s]};
    std::string roots = EncodeConfig(stage_only);
    roots = roots.substr(1, roots.size() - 2);
    const double stage = static_cast<double>(s + 1);
    report.table.rows.push_back({stage, roots, metrics.required_reaction[s],
                                 metrics.available_hold_down[s],
                                 metrics.available_hold_down[s] - metrics.required_reaction[s]});
    required.x.push_back(stage);
    required.y.push_back(metrics.required_reaction[s]);
    available.x.push_back(stage);
    available.y.push_back(metrics.available_hold_down[s]);
  }
  report.chart = Chart{"Staged deployment", "deployment stage", "force [N]",
                       {required, available}, {}};
}

Report EvaluateReport(const Command& command) {
  const MediaProfile media = command.Media();
  AnchorConfig config;
  if (command.fields().Has("config")) {
    config = ParseConfig(command.fields().Object("config"), "scenario.config");
  } else {
    const fs::path path = command.Resolve(command.fields().Text("config_file"));
    config = ParseConfig(ReadJsonFile(path), path.string());
  }
  const ConfigMetrics metrics = EvaluateConfig(config, media);
  Report report;
  report.title = "evaluate";
  report.summary = {{"command", "evaluate"}, {"media", media.name}};
  AddConfigSummary(report, config, metrics);
  return report;
}

Report OptimizeReport(const Command& command) {
  const MediaProfile media = command.Media();
  DesignConstraints constraints;
  if (command.fields().Has("constraints")) {
    constraints = ParseConstraints(command.fields().Object("constraints"), "scenario.constraints");
  }
  const OptimizationResult result = OptimizeConfig(constraints, media);
  if (command.fields().Has("config_out")) {
    WriteFileAtomically(command.Resolve(command.fields().Text("config_out")),
                        ConfigToJson(result.config).dump(2) + "\n");
  }
  Report report;
  report.title = "optimize";
  report.summary = {
      {"command", "optimize"},
      {"media", media.name},
      {"result", result.feasible ? "best feasible design" : "no feasible design"},
      {"candidates_examined", std::to_string(result.candidates_examined)},
  };
  AddConfigSummary(report, result.config, result.metrics);
  return report;
}

void AddFitCurve(Report& report, const std::string& name,
                 const std::vector<CalibrationSample>& samples, auto model) {
  if (!report.chart) {
    report.chart = Chart{"Calibration", "depth [m]", "force [N]", {}, {}};
  }
  std::vector<CalibrationSample> sorted = samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.depth < b.depth; });
  Series measured{name + " samples", {}, {}};
  Series fitted{name + " model", {}, {}};
  for (const auto& s : sorted) {
    measured.x.push_back(s.depth);
    measured.y.push_back(s.force);
    fitted.x.push_back(s.depth);
    fitted.y.push_back(model(s.depth));
  }
  report.chart->series.push_back(std::move(measured));
  report.chart->series.push_back(std::move(fitted));
}

Report CalibrateReport(const Command& command) {
  MediaProfile media = command.Media();
  const Fields calibration(command.fields().Object("calibration"), "scenario.calibration");
  const bool self_anchor = calibration.Has("self_anchor_samples");
  const bool tip = calibration.Has("tip_insertion_samples");
  const bool rigid = calibration.Has("rigid_insertion_samples");
  const bool peaks = calibration.Has("extraction_peaks");
  if (self_anchor && (tip || rigid)) {
    throw ParseError(
        "scenario.calibration: self_anchor_samples cannot be combined with insertion samples");
  }
  if (!self_anchor && !tip && !rigid && !peaks) {
    throw ParseError("scenario.calibration: no calibration data given");
  }

  Report report;
  report.title = "calibrate";
  report.table.columns = {"parameter", "value"};
  auto add = [&report](const std::string& name, double value) {
    report.table.rows.push_back({name, value});
    report.summary.push_back({name, Text(value)});
  };
  report.summary = {{"command", "calibrate"}, {"media_in", media.name}};

  if (peaks) {
    const json& block = calibration.Object("extraction_peaks");
    const Fields p(block, "scenario.calibration.extraction_peaks");
    auto trials = [&](const char* key) {
      return block.contains(key) && block.at(key).is_array() ? p.Numbers(key)
                                                             : std::vector<double>{p.Number(key)};
    };
    const HistoryHairFit fit = FitHistoryAndHair(trials("intruder"), trials("hairless"),
                                                 trials("hairy"));
    media = media.WithSideHistoryRatio(fit.side_history_ratio);
    add("side_history_ratio", fit.side_history_ratio);
    add("hair_factor", fit.hair_factor);
    if (fit.hair_below_unity) report.summary.push_back({"warning", "hairs reduced extraction"});
  }

  const bool sample_fit = self_anchor || tip || rigid;
  const AnchorGeometry geometry = sample_fit ? command.Geometry() : AnchorGeometry{};
  if (self_anchor) {
    const auto samples =
        LoadSamplesCsv(command.Resolve(calibration.Text("self_anchor_samples")));
    const TipSideFit fit = FitTipSideRatio(samples, geometry);
    media = ApplyTipSideFit(media, fit, geometry);
    add("zeta", media.Zeta());
    add("tip_coefficient_N_per_m3", fit.tip_coefficient);
    add("side_coefficient_N_per_m3", fit.side_coefficient);
    add("tip_side_ratio", fit.ratio);
    if (fit.critical_depth) add("critical_depth_m", *fit.critical_depth);
    add("residual_rms_N", fit.residual_rms);
    if (!fit.crossover_observed) report.summary.push_back({"warning", "no crossover observed"});
    if (fit.underdetermined) {
      report.summary.push_back({"warning", "two depths only: underdetermined for noise"});
    }
    AddFitCurve(report, "net", samples,
                [&](double h) { return NetSelfAnchorForce(h, geometry, media); });
  }
  if (tip) {
    const auto samples =
        LoadSamplesCsv(command.Resolve(calibration.Text("tip_insertion_samples")));
    const ScaleFit fit = FitScaleFactor(samples, geometry, media);
    media = media.WithScaleFactor(fit.scale_factor);
    add("zeta", fit.scale_factor);
    add("tip_residual_rms_N", fit.residual_rms);
    AddFitCurve(report, "tip", samples,
                [&](double z) { return TipInsertionForce(z, geometry, media); });
  }
  if (rigid) {
    const auto samples =
        LoadSamplesCsv(command.Resolve(calibration.Text("rigid_insertion_samples")));
    AnchorGeometry intruder = geometry;
    intruder.mode = InsertionMode::kRigidIntruder;
    if (tip) {
      const SideBranchFit fit = FitRigidSideBranch(samples, intruder, media);
      media = ApplySideBranchFit(media, fit);
      add("side_coefficient_N_per_m3", fit.side_coefficient);
      add("extraction_branch_scale", fit.branch_scale);
      add("rigid_residual_rms_N", fit.residual_rms);
    } else {
      const ScaleFit fit = FitScaleFactor(samples, intruder, media);
      media = media.WithScaleFactor(fit.scale_factor);
      add("zeta", fit.scale_factor);
      add("rigid_residual_rms_N", fit.residual_rms);
    }
    AddFitCurve(report, "rigid", samples,
                [&](double z) { return RigidInsertionForce(z, intruder, media); });
  }

  if (calibration.Has("media_name")) media.name = calibration.Text("media_name");
  if (calibration.Has("notes")) media.notes = calibration.Text("notes");
  report.summary.push_back({"media_out_name", media.name});
  if (command.fields().Has("media_out")) {
    const fs::path out = command.Resolve(command.fields().Text("media_out"));
    WriteFileAtomically(out, MediaProfileToJson(media).dump(1) + "\n");
    report.summary.push_back({"media_out", out.filename().string()});
  }
  return report;
}

}  // namespace

std::optional<CommandKind> ParseCommandKind(const std::string& name) {
  for (const auto& [text, kind] : kCommands) {
    if (name == text) return kind;
  }
  return std::nullopt;
}

std::optional<OutputFormat> ParseOutputFormat(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "svg") return OutputFormat::kSvg;
  if (name == "summary") return OutputFormat::kSummary;
  return std::nullopt;
}

ScenarioResult ExecuteScenario(const json& scenario, const fs::path& base_dir,
                               const Overrides& overrides) {
  const Fields fields(scenario, "scenario");
  if (!scenario.contains("schema") || !scenario.at("schema").is_number_integer() ||
      scenario.at("schema").get<int>() != kSchemaVersion) {
    throw ParseError("scenario.schema: expected schema 1");
  }
  const std::string name = fields.Text("command");
  const auto kind = ParseCommandKind(name);
  if (!kind) throw ParseError("scenario.command: unknown command '" + name + "'");

  ScenarioResult result;
  std::string format_name = "summary";
  if (fields.Has("output")) {
    const Fields output(fields.Object("output"), "scenario.output");
    format_name = output.Text("format", format_name);
    if (output.Has("path")) {
      const fs::path p(output.Text("path"));
      result.output_path = p.is_absolute() ? p : base_dir / p;
    }
  }
  if (overrides.format) format_name = *overrides.format;
  if (overrides.out) result.output_path = fs::path(*overrides.out);
  const auto format = ParseOutputFormat(format_name);
  if (!format) throw ParseError("output format must be csv, svg or summary, got '" + format_name + "'");
  result.format = *format;

  const Command command(scenario, base_dir, overrides);
  switch (*kind) {
    case CommandKind::kSimulate: result.report = Simulate(command); break;
    case CommandKind::kCalibrate: result.report = CalibrateReport(command); break;
    case CommandKind::kCriticalDepth: result.report = CriticalDepthReport(command); break;
    case CommandKind::kSweepDiameter: result.report = SweepDiameterReport(command); break;
    case CommandKind::kSweepAngle: result.report = SweepAngleReport(command); break;
    case CommandKind::kEvaluate: result.report = EvaluateReport(command); break;
    case CommandKind::kOptimize: result.report = OptimizeReport(command); break;
  }
  return result;
}

int RunScenario(const json& scenario, const fs::path& base_dir, const Overrides& overrides,
                std::ostream& out, std::ostream& err) {
  try {
    const ScenarioResult result = ExecuteScenario(scenario, base_dir, overrides);
    const std::string rendered = Render(result.report, result.format);
    if (result.output_path) {
      WriteFileAtomically(*result.output_path, rendered);
      out << RenderSummary(result.report);
    } else {
      out << rendered;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const tipanchor::Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int RunScenarioFile(const fs::path& path, const Overrides& overrides, std::ostream& out,
                    std::ostream& err) {
  json scenario;
  try {
    scenario = ReadJsonFile(path);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  }
  return RunScenario(scenario, path.parent_path(), overrides, out, err);
}

}  // namespace tipanchor::cli
