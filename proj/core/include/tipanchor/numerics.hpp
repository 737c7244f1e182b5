#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "tipanchor/errors.hpp"

namespace tipanchor::numerics {

// Bisection on [lower, upper] where f(lower) > 0 and f(upper) <= 0. Returns
// an argument x with f(x) <= 0 that lies within `tolerance` of the first
// sign change.
template <typename Function>
double BisectToNonPositive(Function&& f, double lower, double upper, double tolerance) {
  while (upper - lower > tolerance) {
    const double middle = 0.5 * (lower + upper);
    if (middle == lower || middle == upper) break;
    if (f(middle) <= 0.0) {
      upper = middle;
    } else {
      lower = middle;
    }
  }
  return upper;
}

// Smallest x in (0, limit] where f turns non-positive, assuming f > 0 just
// above zero. The bracket grows geometrically from `first_step`.
template <typename Function>
std::optional<double> FirstNonPositive(Function&& f, double first_step, double limit,
                                       double tolerance) {
  double lower = 0.0;
  double upper = first_step;
  while (true) {
    if (upper >= limit) upper = limit;
    if (f(upper) <= 0.0) {
      if (lower == 0.0 && upper <= tolerance) return upper;
      return BisectToNonPositive(f, lower, upper, tolerance);
    }
    if (upper == limit) return std::nullopt;
    lower = upper;
    upper *= 2.0;
  }
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of y on x.
inline LineFit FitLine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ContractError("line fit needs at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) throw DegenerateFitError("line fit with a single distinct abscissa");
  const double slope = sxy / sxx;
  return {slope, mean_y - slope * mean_x};
}

}  // namespace tipanchor::numerics
