#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace citeflow {

/// Linear interpolation at position (n - 1) * q of ascending `sorted`.
double quantile_sorted(std::span<const double> sorted, double q);

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample (n - 1); 0 when n == 1
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;

  bool empty() const noexcept { return n == 0; }
  /// sd is reported as 0 but is undefined.
  bool single_observation() const noexcept { return n == 1; }
};

/// Takes values in any order. Empty input gives n == 0 and zero fields.
Descriptives describe(std::span<const double> values);

/// Pearson product-moment correlation, clamped to [-1, 1]. nullopt when
/// either input is constant. Throws LengthMismatch, TooFewPoints (n < 2).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace citeflow
