#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace edgediff {

using Complex = std::complex<double>;

struct QuadratureResult {
  Complex value;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  /// Deepest allowed bisection level of any panel.
  int max_depth = 60;
  /// Hard cap on the number of live panels.
  std::size_t max_panels = std::size_t{1} << 22;
  /// Optional local angular frequency |dphi/dx| of the integrand. When set,
  /// the starting partition is refined until every panel spans at most
  /// pi/4 radians of phase, judged at its midpoint.
  std::function<double(double)> phase_rate;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of a complex-valued
/// function on [a, b].
///
/// Each panel is integrated with the 15-point Kronrod rule; |K15 - G7| is its
/// error estimate. The panel with the largest estimate is bisected until the
/// summed estimate is <= max(tol_abs, tol_rel * |value|). Panels are processed
/// in a fixed order, so identical inputs give bit-identical results.
///
/// Throws NonFiniteError (with the abscissa) if f returns NaN/Inf, and
/// ConvergenceError (with the best estimate) if the panel to split is already
/// at max_depth or max_panels is reached.
QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b, double tol_abs,
                                   double tol_rel,
                                   const QuadratureOptions& options = {});

}  // namespace edgediff
