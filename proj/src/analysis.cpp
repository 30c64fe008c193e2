#include "edgediff/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

std::vector<double> slope(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d.front() = v[1] - v[0];
  d.back() = v[n - 1] - v[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (v[i + 1] - v[i - 1]);
  return d;
}

}  // namespace

std::vector<std::size_t> strict_local_maxima(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > v[i + 1]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> strict_local_minima(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] < v[i - 1] && v[i] < v[i + 1]) out.push_back(i);
  }
  return out;
}

double visibility(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double sum = *hi + *lo;
  return sum == 0.0 ? 0.0 : (*hi - *lo) / sum;
}

double first_fringe_visibility(std::span<const double> v) {
  const auto maxima = strict_local_maxima(v);
  if (maxima.size() < 2) {
    throw DomainError("pattern has fewer than two fringes");
  }
  return visibility(v.subspan(maxima[0], maxima[1] - maxima[0] + 1));
}

double max_window_visibility(std::span<const double> v, std::size_t from,
                             std::size_t window) {
  double worst = 0.0;
  if (window == 0) return worst;
  for (std::size_t i = from; i + window <= v.size(); ++i) {
    worst = std::max(worst, visibility(v.subspan(i, window)));
  }
  return worst;
}

double correlation_lag(std::span<const double> reference,
                       std::span<const double> moved, double step) {
  if (reference.size() != moved.size() || reference.size() < 3) {
    throw DomainError("correlation_lag needs equal-length series (n >= 3)");
  }
  const auto u = slope(reference);
  const auto w = slope(moved);
  const auto n = static_cast<std::ptrdiff_t>(u.size());

  auto correlation = [&](std::ptrdiff_t lag) {
    double sum = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, -lag);
         i < std::min(n, n - lag); ++i) {
      sum += u[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i + lag)];
    }
    return sum;
  };

  std::ptrdiff_t best = 0;
  double best_value = correlation(0);
  for (std::ptrdiff_t lag = -(n - 1); lag <= n - 1; ++lag) {
    const double c = correlation(lag);
    if (c > best_value) {
      best_value = c;
      best = lag;
    }
  }
  double refined = static_cast<double>(best);
  if (best > -(n - 1) && best < n - 1) {
    const double left = correlation(best - 1);
    const double right = correlation(best + 1);
    const double curvature = left - 2.0 * best_value + right;
    if (curvature < 0.0) refined += 0.5 * (left - right) / curvature;
  }
  return refined * step;
}

}  // namespace edgediff
