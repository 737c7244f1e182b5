#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tipanchor {

// Vertical and horizontal stress per unit depth [N/m^3].
struct StressPair {
  double alpha_z = 0.0;
  double alpha_x = 0.0;
};

// Gridded stress response over attack angle (beta) and intrusion angle
// (gamma), both in radians. Values are stored beta-major.
//
// Convention: gamma is the angle of the element velocity below horizontal,
// +pi/2 for straight down and -pi/2 for straight up. alpha_z holds the
// magnitude of the vertical stress resisting the motion and is never
// negative; its sign is applied by the caller from the motion direction.
class StressTable {
 public:
  StressTable() = default;
  StressTable(std::vector<double> betas, std::vector<double> gammas,
              std::vector<StressPair> values);

  // Bilinear interpolation. Throws RangeError naming the offending angle.
  StressPair Interpolate(double beta, double gamma) const;

  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& gammas() const { return gammas_; }
  const StressPair& at(std::size_t beta_index, std::size_t gamma_index) const {
    return values_[beta_index * gammas_.size() + gamma_index];
  }
  std::size_t size() const { return values_.size(); }

  // Copy with alpha_z multiplied by `factor` on every node with gamma < 0.
  // Those nodes describe upward (extraction) motion, so this rescales the
  // side-anchoring branch without touching penetration.
  StressTable WithScaledExtractionBranch(double factor) const;

  // Checks coverage of [-pi/2, pi/2]^2, spacing <= 5 degrees, alpha_z >= 0.
  void Validate() const;

 private:
  std::vector<double> betas_;
  std::vector<double> gammas_;
  std::vector<StressPair> values_;
};

// Fourier-series coefficients for the generic granular stress law, in
// N/cm^3 per unit scale factor.
struct FourierCoefficients {
  double a00 = 0.206;
  double a10 = 0.169;
  double b01 = 0.358;
  double b11 = 0.212;
  double bm11 = 0.055;
  double c01 = 0.253;
  double c11 = -0.124;
  double cm11 = 0.007;
  double d10 = 0.088;
};

// Tabulates the generic dry-sand response on a regular grid (default 5 deg).
StressTable MakeFourierStressTable(const FourierCoefficients& coefficients = {},
                                   double step_degrees = 5.0);

// Calibrated RFT description of one granular medium.
struct MediaProfile {
  std::string name;
  StressTable stress_table;
  std::optional<double> scale_factor;  // zeta; unset until calibrated
  double side_history_ratio = 2.5;     // rho >= 1
  double volume_fraction = 0.58;       // phi, metadata only
  std::string notes;

  bool calibrated() const { return scale_factor.has_value(); }

  // Throws ConfigurationError when the profile has not been calibrated.
  double Zeta() const;

  void Validate() const;

  MediaProfile WithScaleFactor(double zeta) const;
  MediaProfile WithSideHistoryRatio(double rho) const;
};

// Generic dry sand: Fourier table, rho = 2.5, phi = 0.58, zeta unset.
MediaProfile GenericSand();

}  // namespace tipanchor
