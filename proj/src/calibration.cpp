#include "edgediff/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "edgediff/errors.hpp"
#include "edgediff/parallel.hpp"

namespace edgediff {

FitResult fit_scale_offset(std::span<const double> model_p12,
                           std::span<const double> counts) {
  const std::size_t n = model_p12.size();
  if (counts.size() != n) {
    throw DomainError("model and counts differ in length");
  }
  if (n < 3) throw DomainError("fit needs at least 3 points");

  double model_mean = 0.0;
  double counts_mean = 0.0;
  double model_peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    model_mean += model_p12[i];
    counts_mean += counts[i];
    model_peak = std::max(model_peak, std::abs(model_p12[i]));
  }
  model_mean /= static_cast<double>(n);
  counts_mean /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = model_p12[i] - model_mean;
    sxx += dx * dx;
    sxy += dx * (counts[i] - counts_mean);
  }
  // Spread below ~1e-14 of the peak is rounding noise, not signal.
  const double floor = 1e-14 * model_peak;
  if (!(sxx > static_cast<double>(n) * floor * floor)) {
    throw SingularSystemError(
        "model vector is constant; scale is not identifiable");
  }

  FitResult fit;
  fit.scale = sxy / sxx;
  fit.background = counts_mean - fit.scale * model_mean;
  fit.degrees_of_freedom = static_cast<int>(n) - 2;
  fit.per_point_residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = counts[i] - (fit.scale * model_p12[i] + fit.background);
    fit.per_point_residuals[i] = r;
    fit.residual_sum_squares += r * r;
  }
  const double variance = fit.residual_sum_squares / fit.degrees_of_freedom;
  // inverse of [[sum x^2, sum x], [sum x, n]] via centred sums
  fit.scale_stderr = std::sqrt(variance / sxx);
  fit.background_stderr = std::sqrt(
      variance * (1.0 / static_cast<double>(n) + model_mean * model_mean / sxx));
  return fit;
}

SigmaScanResult fit_sigma_scan(const SetupGeometry& g, double wavelength,
                               std::span<const double> edges,
                               std::span<const double> counts,
                               std::span<const double> sigma_grid,
                               Method method) {
  if (sigma_grid.empty()) throw DomainError("sigma grid is empty");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] > 0.0) || !std::isfinite(sigma_grid[i])) {
      throw DomainError("sigma grid values must be positive");
    }
    if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) {
      throw DomainError("sigma grid must be strictly increasing");
    }
  }

  SigmaScanResult result;
  result.fits.resize(sigma_grid.size());
  detail::parallel_for(sigma_grid.size(), [&](std::size_t i) {
    const SourceModel source(wavelength, sigma_grid[i]);
    const auto model = edge_sweep(g, source, edges, method).normalized();
    result.fits[i] = fit_scale_offset(model, counts);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.fits.size(); ++i) {
    const double current = result.fits[best].residual_sum_squares;
    const double candidate = result.fits[i].residual_sum_squares;
    if (candidate < current - 1e-12 * current) best = i;
  }
  result.best_sigma = sigma_grid[best];
  return result;
}

}  // namespace edgediff
