#include "citeflow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "citeflow/error.hpp"

namespace citeflow {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::domain_error("quantile of empty set");
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Descriptives describe(std::span<const double> values) {
  Descriptives d;
  d.n = values.size();
  if (d.n == 0) return d;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  double sum = 0.0;
  for (double v : sorted) sum += v;
  d.mean = sum / static_cast<double>(d.n);
  if (d.n > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - d.mean) * (v - d.mean);
    d.sd = std::sqrt(ss / static_cast<double>(d.n - 1));
  }
  d.min = sorted.front();
  d.max = sorted.back();
  d.q1 = quantile_sorted(sorted, 0.25);
  d.median = quantile_sorted(sorted, 0.5);
  d.q3 = quantile_sorted(sorted, 0.75);
  return d;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw Error(ErrorCode::TooFewPoints, std::to_string(xs.size()));

  // A constant sample is detected directly: its computed mean can differ from
  // the value by an ulp, which would otherwise leave a tiny spurious variance.
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(xs) || constant(ys)) return std::nullopt;

  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace citeflow
