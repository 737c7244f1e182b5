// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "tipanchor/anchor_model.hpp"
#include "tipanchor/calibration.hpp"
#include "tipanchor/cli/formats.hpp"
#include "tipanchor/design.hpp"
#include "tipanchor/units.hpp"

using namespace tipanchor;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TIPANCHOR_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

double RelativeError(double value, double truth) { return std::abs(value - truth) / std::abs(truth); }

MediaProfile FineSand() {
  const auto samples = cli::LoadSamplesCsv(kData / "calibration/self_anchor_samples.csv");
  const auto probe = AnchorGeometry::TipExtender(0.0075, 0.20);
  return ApplyTipSideFit(GenericSand(), FitTipSideRatio(samples, probe), probe);
}

Outcome CriticalDepthReproduction() {
  std::optional<double> h;
  const double t = Seconds([&] {
    const MediaProfile media = FineSand();
    h = CriticalDepth(AnchorGeometry::TipExtender(0.0075, 0.20), media);
  });
  const bool ok = h && std::abs(*h - 0.12) <= 0.01 && t < 1.0;
  return {ok, Format("critical depth %.5f m (0.12 +/- 0.01), %.3f s", h ? *h : -1.0, t)};
}

Outcome ScalingLaw() {
  DiameterSweep sweep;
  const double t = Seconds([&] {
    const MediaProfile media = FineSand();
    std::vector<double> diameters;
    for (int i = 0; i < 24; ++i) diameters.push_back(0.007 + 0.001 * i);
    sweep = SweepDiameter(diameters, 0.15, media);
  });
  const bool ok = std::abs(sweep.insertion_exponent - 2.0) <= 0.05 &&
                  std::abs(sweep.extraction_exponent - 1.0) <= 0.05 && t < 1.0;
  return {ok, Format("exponents insertion %.4f, extraction %.4f, %.3f s", sweep.insertion_exponent,
                     sweep.extraction_exponent, t)};
}

Outcome RatioOrdering() {
  MediaProfile media = GenericSand();
  const HistoryHairFit peaks = FitHistoryAndHair(ExtractionPeaks{1.0, 2.5, 3.5});
  media = media.WithSideHistoryRatio(peaks.side_history_ratio);
  const auto probe = AnchorGeometry::TipExtender(0.0075, 0.20);
  const ScaleFit zeta =
      FitScaleFactor(cli::LoadSamplesCsv(kData / "calibration/tip_insertion_samples.csv"), probe, media);
  media = media.WithScaleFactor(zeta.scale_factor);
  const auto rigid_samples = cli::LoadSamplesCsv(kData / "calibration/rigid_insertion_samples.csv");
  media = ApplySideBranchFit(media, FitRigidSideBranch(rigid_samples, AnchorGeometry::RigidIntruder(0.0075, 0.20), media));

  const double depth = 0.15;
  auto ratio = [&](const AnchorGeometry& g) { return *BuildForceReport(g, media, 0.005).extraction_to_insertion; };
  const double hairy = ratio(AnchorGeometry::HairyTipExtender(0.0075, depth, peaks.hair_factor));
  const double hairless = ratio(AnchorGeometry::TipExtender(0.0075, depth));
  const double rigid = ratio(AnchorGeometry::RigidIntruder(0.0075, depth));
  const double contrast = RigidInsertionForce(depth, AnchorGeometry::RigidIntruder(0.0075, depth), media) /
                          TipInsertionForce(depth, AnchorGeometry::TipExtender(0.0075, depth), media);
  const bool ok = hairy > hairless && hairless > 1.0 && 1.0 > rigid && contrast >= 7.0 && contrast <= 13.0;
  return {ok, Format("ratios hairy %.3g > hairless %.3g > 1 > rigid %.3g; rigid/tip insertion %.3g (7..13)",
                     hairy, hairless, rigid, contrast)};
}

Outcome OracleEquivalence() {
  double worst = 0.0;
  int cases = 0;
  const double t = Seconds([&] {
    for (double r : {0.004, 0.006, 0.008, 0.010, 0.012}) {
      for (double depth : {0.03, 0.06, 0.09, 0.12, 0.15}) {
        for (double zeta : {0.2, 1.0, 3.0}) {
          const MediaProfile media = GenericSand().WithScaleFactor(zeta);
          const auto tip = AnchorGeometry::HairyTipExtender(r, depth, 1.4);
          const auto rigid = AnchorGeometry::RigidIntruder(r, depth);
          const double pairs[][2] = {
              {TipInsertionForce(depth, tip, media), integrated::TipInsertionForce(depth, tip, media)},
              {SideAnchorForce(depth, tip, media), integrated::SideAnchorForce(depth, tip, media)},
              {RigidInsertionForce(depth, rigid, media), integrated::RigidInsertionForce(depth, rigid, media)},
              {AngledPairForce(0.0, tip, media).insertion, 2.0 * integrated::TipInsertionForce(depth, tip, media)},
              {AngledPairForce(0.0, tip, media).extraction, 2.0 * integrated::SideAnchorForce(depth, tip, media)},
          };
          for (const auto& p : pairs) {
            worst = std::max(worst, RelativeError(p[1], p[0]));
            ++cases;
          }
        }
      }
    }
  });
  return {worst <= 5e-3 && t < 10.0,
          Format("%d comparisons, worst relative error %.2e (<= 5e-3), %.3f s", cases, worst, t)};
}

Outcome CalibrationRoundTrips() {
  const auto rigid = AnchorGeometry::RigidIntruder(0.0075, 0.2);
  const auto tip = AnchorGeometry::HairyTipExtender(0.0075, 0.2, 1.4);
  const double zeta = 1.7;
  const MediaProfile truth = GenericSand().WithScaleFactor(zeta);
  const double ratio = TipCoefficient(tip, truth) / SideCoefficient(tip, truth);
  const double rho = 2.5, kappa = 1.4;

  auto zeta_fit = [&](double noise, std::mt19937_64* rng) {
    std::vector<CalibrationSample> s;
    std::uniform_real_distribution<double> u(-noise, noise);
    for (int i = 1; i <= 10; ++i) {
      for (int trial = 0; trial < 5; ++trial) {
        const double z = 0.015 * i;
        s.push_back({z, RigidInsertionForce(z, rigid, truth) * (1.0 + (rng ? u(*rng) : 0.0)), Regime::kRigidInsertion});
      }
    }
    return FitScaleFactor(s, rigid, GenericSand()).scale_factor;
  };
  auto peak_fit = [&](double noise, std::mt19937_64* rng) {
    std::uniform_real_distribution<double> u(-noise, noise);
    std::vector<double> a, b, c;
    for (int trial = 0; trial < 5; ++trial) {
      a.push_back(1.0 * (1.0 + (rng ? u(*rng) : 0.0)));
      b.push_back(rho * (1.0 + (rng ? u(*rng) : 0.0)));
      c.push_back(rho * kappa * (1.0 + (rng ? u(*rng) : 0.0)));
    }
    return FitHistoryAndHair(a, b, c);
  };
  auto ratio_fit = [&](double noise, std::mt19937_64* rng) {
    std::vector<CalibrationSample> s;
    std::uniform_real_distribution<double> u(-noise, noise);
    for (int i = 1; i <= 10; ++i) {
      for (int trial = 0; trial < 5; ++trial) {
        const double h = 0.015 * i;
        s.push_back({h, NetSelfAnchorForce(h, tip, truth) * (1.0 + (rng ? u(*rng) : 0.0)), Regime::kSelfAnchorWeight});
      }
    }
    return FitTipSideRatio(s, tip).ratio;
  };

  const HistoryHairFit clean_peaks = peak_fit(0.0, nullptr);
  const double clean = std::max({RelativeError(zeta_fit(0.0, nullptr), zeta),
                                 RelativeError(clean_peaks.side_history_ratio, rho),
                                 RelativeError(clean_peaks.hair_factor, kappa),
                                 RelativeError(ratio_fit(0.0, nullptr), ratio)});
  double noisy = 0.0;
  int seeds_ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const HistoryHairFit p = peak_fit(0.05, &rng);
    const double e = std::max({RelativeError(zeta_fit(0.05, &rng), zeta), RelativeError(p.side_history_ratio, rho),
                               RelativeError(p.hair_factor, kappa), RelativeError(ratio_fit(0.05, &rng), ratio)});
    noisy = std::max(noisy, e);
    if (e <= 0.05) ++seeds_ok;
  }
  return {clean <= 1e-6 && seeds_ok == 20,
          Format("noiseless worst %.2e (<= 1e-6); 5%% noise: %d/20 seeds within 5%%, worst %.3f", clean,
                 seeds_ok, noisy)};
}

Outcome SplitLaw() {
  const auto rows = SplitComparison(kPi * 0.01 * 0.01, 16, 0.15, FineSand());
  double worst = 0.0;
  for (int n : {1, 4, 9, 16}) worst = std::max(worst, RelativeError(rows[n - 1].ratio_vs_single, std::sqrt(n)));
  return {worst <= 0.01, Format("ratio(N)/ratio(1) vs sqrt(N) at N=1,4,9,16: worst %.2e (<= 1e-2)", worst)};
}

Outcome StagedDeployment() {
  const MediaProfile media = FineSand();
  const AnchorConfig device = cli::ParseConfig(cli::ReadJsonFile(kData / "configs/staged_device.json"), "device");
  AnchorConfig reversed = device;
  std::reverse(reversed.stages.begin(), reversed.stages.end());
  const ConfigMetrics forward = EvaluateConfig(device, media);
  const ConfigMetrics backward = EvaluateConfig(reversed, media);

  int designs = 0;
  bool ordered = true;
  for (double weight : {1.0, 2.9, 10.0, 100.0}) {
    DesignConstraints c;
    c.device_weight = weight;
    const OptimizationResult r = OptimizeConfig(c, media);
    if (!r.feasible) continue;
    ++designs;
    for (std::size_t a = 0; a < r.config.stages.size(); ++a) {
      for (std::size_t b = a + 1; b < r.config.stages.size(); ++b) {
        for (std::size_t i : r.config.stages[a]) {
          for (std::size_t j : r.config.stages[b]) {
            if (r.config.roots[i].Diameter() > r.config.roots[j].Diameter() + 1e-12) ordered = false;
          }
        }
      }
    }
  }
  const bool ok = forward.feasible && backward.required_reaction[0] > forward.required_reaction[0] && ordered &&
                  designs > 0;
  return {ok, Format("device feasible=%s, stage-1 reaction %.3f N vs reversed %.3f N; %d optimized designs %s",
                     forward.feasible ? "yes" : "no", forward.required_reaction[0], backward.required_reaction[0],
                     designs, ordered ? "small-first" : "OUT OF ORDER")};
}

Outcome AngleTrend() {
  const MediaProfile media = FineSand();
  const auto g = AnchorGeometry::HairyTipExtender(0.0065, 0.45, 1.4);
  std::vector<AngledPairForces> f;
  for (double deg : {0.0, 15.0, 30.0, 45.0}) f.push_back(AngledPairForce(DegreesToRadians(deg), g, media));
  bool decreasing = true;
  for (std::size_t i = 1; i < f.size(); ++i) decreasing = decreasing && f[i].extraction < f[i - 1].extraction;
  const bool ok = decreasing && f[2].Ratio() < f[0].Ratio() && f[3].Ratio() < f[0].Ratio();
  return {ok, Format("extraction %.3g > %.3g > %.3g > %.3g N; ratio 0/30/45 deg %.3g/%.3g/%.3g", f[0].extraction,
                     f[1].extraction, f[2].extraction, f[3].extraction, f[0].Ratio(), f[2].Ratio(), f[3].Ratio())};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome CliDeterminism() {
  const fs::path work = fs::temp_directory_path() / ("tipanchor_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(work);
  fs::create_directories(work);
  fs::copy(kData, work / "data", fs::copy_options::recursive);
  const fs::path scenarios = work / "data/scenarios";

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(scenarios)) names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  // Calibration runs first so the dependent scenarios read fresh profiles.
  std::stable_partition(names.begin(), names.end(), [](const std::string& n) { return n.rfind("calibrate", 0) == 0; });

  int identical = 0;
  std::string failures;
  for (const std::string& name : names) {
    std::string artifacts[2];
    bool ran = true;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = work / (name + "." + std::to_string(run) + ".csv");
      const std::string command = std::string(TIPANCHOR_CLI_PATH) + " run " + (scenarios / (name + ".json")).string() +
                                  " --format csv --out " + out.string() + " > /dev/null 2>&1";
      ran = ran && std::system(command.c_str()) == 0;
      artifacts[run] = Slurp(out);
      for (const char* side : {"../media/fine_sand.json", "../media/play_sand.json"}) {
        artifacts[run] += Slurp(scenarios / side);
      }
    }
    if (ran && !artifacts[0].empty() && artifacts[0] == artifacts[1]) {
      ++identical;
    } else {
      failures += " " + name;
    }
  }
  fs::remove_all(work);
  const int total = static_cast<int>(names.size());
  return {total > 0 && identical == total,
          Format("%d/%d scenarios byte-identical across two runs%s", identical, total,
                 failures.empty() ? "" : (" (differ:" + failures + ")").c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 critical depth", CriticalDepthReproduction},
      {"AC2 scaling law", ScalingLaw},
      {"AC3 ratio ordering", RatioOrdering},
      {"AC4 oracle equivalence", OracleEquivalence},
      {"AC5 calibration round-trips", CalibrationRoundTrips},
      {"AC6 split law", SplitLaw},
      {"AC7 staged deployment", StagedDeployment},
      {"AC8 angle trend", AngleTrend},
      {"AC9 CLI determinism", CliDeterminism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
  }
  return failures;
}
