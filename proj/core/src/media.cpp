#include "tipanchor/media.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "tipanchor/errors.hpp"
#include "tipanchor/units.hpp"

namespace tipanchor {
namespace {

constexpr double kAngleSlack = 1e-9;
constexpr double kMaxSpacing = 5.0 * kPi / 180.0 + 1e-9;

void CheckAxis(const std::vector<double>& axis, const char* label) {
  if (axis.size() < 2) {
    throw ContractError(std::string("stress table ") + label + " axis needs at least two nodes");
  }
  if (std::abs(axis.front() + kHalfPi) > kAngleSlack ||
      std::abs(axis.back() - kHalfPi) > kAngleSlack) {
    throw ContractError(std::string("stress table ") + label +
                        " axis must span [-90, 90] degrees");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const double gap = axis[i] - axis[i - 1];
    if (!(gap > 0.0)) {
      throw ContractError(std::string("stress table ") + label + " axis is not increasing");
    }
    if (gap > kMaxSpacing) {
      throw ContractError(std::string("stress table ") + label +
                         " axis has a gap wider than 5 degrees");
    }
  }
}

// Cell index and fractional position of `value` on `axis`.
std::pair<std::size_t, double> Locate(const std::vector<double>& axis, double value) {
  const auto upper = std::upper_bound(axis.begin(), axis.end(), value);
  std::size_t hi = static_cast<std::size_t>(upper - axis.begin());
  if (hi == 0) hi = 1;
  if (hi >= axis.size()) hi = axis.size() - 1;
  const std::size_t lo = hi - 1;
  const double t = (value - axis[lo]) / (axis[hi] - axis[lo]);
  return {lo, std::clamp(t, 0.0, 1.0)};
}

double ClampAngle(double angle, const std::vector<double>& axis, const char* name) {
  if (!(angle >= axis.front() - kAngleSlack && angle <= axis.back() + kAngleSlack)) {
    std::ostringstream message;
    message << name << " = " << angle << " rad is outside the stress table range ["
            << axis.front() << ", " << axis.back() << "]";
    throw RangeError(message.str());
  }
  return std::clamp(angle, axis.front(), axis.back());
}

}  // namespace

StressTable::StressTable(std::vector<double> betas, std::vector<double> gammas,
                         std::vector<StressPair> values)
    : betas_(std::move(betas)), gammas_(std::move(gammas)), values_(std::move(values)) {
  if (values_.size() != betas_.size() * gammas_.size()) {
    throw ContractError("stress table has " + std::to_string(values_.size()) +
                        " values for a " + std::to_string(betas_.size()) + " x " +
                        std::to_string(gammas_.size()) + " grid");
  }
}

StressPair StressTable::Interpolate(double beta, double gamma) const {
  if (values_.empty()) throw ConfigurationError("stress table is empty");
  beta = ClampAngle(beta, betas_, "attack angle beta");
  gamma = ClampAngle(gamma, gammas_, "intrusion angle gamma");
  const auto [i, tb] = Locate(betas_, beta);
  const auto [j, tg] = Locate(gammas_, gamma);
  const StressPair& v00 = at(i, j);
  const StressPair& v01 = at(i, j + 1);
  const StressPair& v10 = at(i + 1, j);
  const StressPair& v11 = at(i + 1, j + 1);
  auto blend = [&](double a, double b, double c, double d) {
    const double low = (1.0 - tg) * a + tg * b;
    const double high = (1.0 - tg) * c + tg * d;
    return (1.0 - tb) * low + tb * high;
  };
  return {blend(v00.alpha_z, v01.alpha_z, v10.alpha_z, v11.alpha_z),
          blend(v00.alpha_x, v01.alpha_x, v10.alpha_x, v11.alpha_x)};
}

StressTable StressTable::WithScaledExtractionBranch(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw ContractError("extraction branch scale must be finite and non-negative");
  }
  StressTable scaled = *this;
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    for (std::size_t j = 0; j < gammas_.size(); ++j) {
      if (gammas_[j] < 0.0) scaled.values_[i * gammas_.size() + j].alpha_z *= factor;
    }
  }
  return scaled;
}

void StressTable::Validate() const {
  CheckAxis(betas_, "beta");
  CheckAxis(gammas_, "gamma");
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    for (std::size_t j = 0; j < gammas_.size(); ++j) {
      const StressPair& v = at(i, j);
      if (!std::isfinite(v.alpha_z) || !std::isfinite(v.alpha_x) || v.alpha_z < 0.0) {
        std::ostringstream message;
        message << "stress table node (beta " << RadiansToDegrees(betas_[i]) << " deg, gamma "
                << RadiansToDegrees(gammas_[j]) << " deg) has invalid alpha_z " << v.alpha_z;
        throw ContractError(message.str());
      }
    }
  }
}

StressTable MakeFourierStressTable(const FourierCoefficients& c, double step_degrees) {
  if (!(step_degrees > 0.0) || step_degrees > 5.0) {
    throw ContractError("Fourier table step must be in (0, 5] degrees");
  }
  const int count = static_cast<int>(std::lround(180.0 / step_degrees));
  if (std::abs(count * step_degrees - 180.0) > 1e-9) {
    throw ContractError("Fourier table step must divide 180 degrees");
  }
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(count) + 1);
  for (int k = 0; k <= count; ++k) axis.push_back(DegreesToRadians(-90.0 + k * step_degrees));

  constexpr double kPerCubicCentimetre = 1e6;  // N/cm^3 -> N/m^3
  std::vector<StressPair> values;
  values.reserve(axis.size() * axis.size());
  for (double beta : axis) {
    for (double gamma : axis) {
      // The series gives the upward-positive vertical stress with gamma
      // positive for downward motion; keep only the part resisting motion.
      const double vertical = c.a00 + c.a10 * std::cos(2.0 * beta) + c.b01 * std::sin(gamma) +
                              c.b11 * std::sin(2.0 * beta + gamma) +
                              c.bm11 * std::sin(-2.0 * beta + gamma);
      const double horizontal = c.c01 * std::cos(gamma) + c.c11 * std::cos(2.0 * beta + gamma) +
                                c.cm11 * std::cos(-2.0 * beta + gamma) +
                                c.d10 * std::sin(2.0 * beta);
      const double resisting = gamma < 0.0 ? -vertical : vertical;
      values.push_back({std::max(resisting, 0.0) * kPerCubicCentimetre,
                        horizontal * kPerCubicCentimetre});
    }
  }
  return StressTable(axis, axis, std::move(values));
}

double MediaProfile::Zeta() const {
  if (!scale_factor) {
    throw ConfigurationError("media '" + name + "' is uncalibrated: scale factor zeta is unset");
  }
  return *scale_factor;
}

void MediaProfile::Validate() const {
  stress_table.Validate();
  if (scale_factor && !(*scale_factor > 0.0 && std::isfinite(*scale_factor))) {
    throw ContractError("media '" + name + "': zeta must be positive");
  }
  if (!(side_history_ratio >= 1.0) || !std::isfinite(side_history_ratio)) {
    throw ContractError("media '" + name + "': rho must be >= 1");
  }
  if (!(volume_fraction > 0.0 && volume_fraction < 1.0)) {
    throw ContractError("media '" + name + "': phi must lie in (0, 1)");
  }
}

MediaProfile MediaProfile::WithScaleFactor(double zeta) const {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ContractError("zeta must be positive");
  MediaProfile copy = *this;
  copy.scale_factor = zeta;
  return copy;
}

MediaProfile MediaProfile::WithSideHistoryRatio(double rho) const {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw ContractError("rho must be >= 1");
  MediaProfile copy = *this;
  copy.side_history_ratio = rho;
  return copy;
}

MediaProfile GenericSand() {
  MediaProfile media;
  media.name = "generic dry sand";
  media.stress_table = MakeFourierStressTable();
  media.side_history_ratio = 2.5;
  media.volume_fraction = 0.58;
  media.notes = "generic Fourier-form stress table; zeta must be calibrated";
  return media;
}

}  // namespace tipanchor
