#pragma once

// Affine calibration of the normalized pattern to counts.

#include <span>
#include <vector>

#include "edgediff/diffraction.hpp"

namespace edgediff {

struct FitResult {
  double scale = 0.0;       ///< counts per unit normalized p12
  double background = 0.0;  ///< counts
  double residual_sum_squares = 0.0;
  int degrees_of_freedom = 0;
  std::vector<double> per_point_residuals;  ///< counts - fitted
  /// Standard errors from the normal-equation covariance, RSS/dof variance.
  double scale_stderr = 0.0;
  double background_stderr = 0.0;
};

/// Ordinary least squares counts ~ scale * model + background, solved from
/// the centred 2x2 normal equations. Needs n >= 3 equal-length inputs;
/// throws SingularSystemError when the model is constant.
FitResult fit_scale_offset(std::span<const double> model_p12,
                           std::span<const double> counts);

struct SigmaScanResult {
  double best_sigma = 0.0;
  std::vector<FitResult> fits;  ///< one per sigma, grid order
};

/// For each sigma: normalized edge_sweep on `edges`, then fit_scale_offset.
/// Returns the sigma with the least RSS; ties (within 1e-12 relative) go to
/// the smaller sigma. sigma_grid must be strictly increasing and positive.
SigmaScanResult fit_sigma_scan(const SetupGeometry& g, double wavelength,
                               std::span<const double> edges,
                               std::span<const double> counts,
                               std::span<const double> sigma_grid,
                               Method method = Method::closed_form);

}  // namespace edgediff
