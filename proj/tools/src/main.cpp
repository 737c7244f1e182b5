#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tipanchor/cli/formats.hpp"
#include "tipanchor/cli/scenario.hpp"
#include "tipanchor/media.hpp"

namespace {

using nlohmann::json;
using tipanchor::cli::Overrides;

struct RootFlags {
  double diameter_cm = 1.5;
  double length_cm = 45.0;
  double tilt_deg = 0.0;
  std::string skin = "hairless";
  double hair_factor = 1.4;
  std::string mode = "tip_extender";

  void Attach(CLI::App* app) {
    app->add_option("--diameter-cm", diameter_cm, "Root diameter [cm]");
    app->add_option("--length-cm", length_cm, "Root length [cm]");
    app->add_option("--tilt-deg", tilt_deg, "Tilt from vertical [deg]");
    app->add_option("--skin", skin, "hairless or hairy")->check(CLI::IsMember({"hairless", "hairy"}));
    app->add_option("--hair-factor", hair_factor, "Hair extraction multiplier");
    app->add_option("--mode", mode, "tip_extender or rigid_intruder")
        ->check(CLI::IsMember({"tip_extender", "rigid_intruder"}));
  }

  json ToJson() const {
    return json{{"diameter_m", diameter_cm / 100.0}, {"length_m", length_cm / 100.0},
                {"tilt_deg", tilt_deg},             {"skin", skin},
                {"hair_factor", hair_factor},       {"mode", mode}};
  }
};

void AttachOverrides(CLI::App* app, Overrides& overrides, std::optional<long>& seed) {
  app->add_option("--media", overrides.media, "Media profile file");
  app->add_option("--out", overrides.out, "Output file");
  app->add_option("--format", overrides.format, "csv, svg or summary");
  app->add_option("--element-size", overrides.element_size, "Element size for integration [m]");
  app->add_option("--seed", seed, "Reserved; the model is deterministic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tip-extending anchor force model"};
  app.require_subcommand(1);

  Overrides overrides;
  std::optional<long> seed;
  std::string scenario_path;
  RootFlags root;
  double depth_cm = 15.0;
  std::vector<double> diameters_cm;
  std::vector<double> angles_deg{0.0, 15.0, 30.0, 45.0};

  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario document")->required();
  AttachOverrides(run, overrides, seed);

  CLI::App* simulate = app.add_subcommand("simulate", "Force-depth curves for one root");
  root.Attach(simulate);
  CLI::App* critical = app.add_subcommand("critical-depth", "Net-force zero crossing");
  root.Attach(critical);
  CLI::App* sweep_d = app.add_subcommand("sweep-diameter", "Forces across diameters");
  sweep_d->add_option("--diameters-cm", diameters_cm, "Diameters [cm]")->required();
  sweep_d->add_option("--depth-cm", depth_cm, "Depth [cm]");
  CLI::App* sweep_a = app.add_subcommand("sweep-angle", "Angled pair forces");
  root.Attach(sweep_a);
  sweep_a->add_option("--angles-deg", angles_deg, "Tilts [deg]");
  for (CLI::App* sub : {simulate, critical, sweep_d, sweep_a}) {
    AttachOverrides(sub, overrides, seed);
    sub->get_option("--media")->required();
  }

  std::optional<std::string> template_out;
  CLI::App* media_template =
      app.add_subcommand("media-template", "Write the generic sand profile (zeta unset)");
  media_template->add_option("--out", template_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*run) {
    return tipanchor::cli::RunScenarioFile(scenario_path, overrides, std::cout, std::cerr);
  }
  if (*media_template) {
    const std::string text =
        tipanchor::cli::MediaProfileToJson(tipanchor::GenericSand()).dump(1) + "\n";
    try {
      if (template_out) {
        tipanchor::cli::WriteFileAtomically(*template_out, text);
      } else {
        std::cout << text;
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    return 0;
  }

  // Direct subcommands build the equivalent scenario document.
  json scenario{{"schema", tipanchor::cli::kSchemaVersion}};
  if (*simulate || *critical || *sweep_a) scenario["geometry"] = root.ToJson();
  if (*simulate) scenario["command"] = "simulate";
  if (*critical) scenario["command"] = "critical-depth";
  if (*sweep_a) {
    scenario["command"] = "sweep-angle";
    scenario["angles_deg"] = angles_deg;
  }
  if (*sweep_d) {
    std::vector<double> meters;
    for (double d : diameters_cm) meters.push_back(d / 100.0);
    scenario["command"] = "sweep-diameter";
    scenario["sweep"] = json{{"diameters_m", meters}, {"depth_m", depth_cm / 100.0}};
  }
  return tipanchor::cli::RunScenario(scenario, std::filesystem::current_path(), overrides,
                                     std::cout, std::cerr);
}
