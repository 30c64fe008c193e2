#pragma once

// Two-photon coincidence amplitude behind a straight edge, edge-position
// sweeps, detector-2 singles, and the classical knife-edge curve.
//
// The coincidence amplitude is, up to a dropped global constant and the
// global phase exp(i k0 (d1 + d2 + d3)),
//
//   a12(dy) = int_{-inf}^{dy} exp(-y'^2/sigma^2)
//                 exp(i k0 (y - y1)^2 / (2D)) exp(i k0 (y - y2)^2 / (2 d3)) dy
//
// with y' = y1 + (y - y1) d1/D. The edge blocks y > dy.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "edgediff/geometry.hpp"

namespace edgediff {

using Complex = std::complex<double>;

enum class Method {
  /// Coefficients collected into exp(-a y^2 + b y + c) and integrated with
  /// the Faddeeva-based closed form.
  closed_form,
  /// Adaptive quadrature of the integrand along steepest-descent contours.
  quadrature,
  /// Adaptive quadrature along the real axis, truncated where the source
  /// envelope drops below 1e-16, with phase-capped panels. Only practical
  /// when the envelope spans a moderate number of chirp periods.
  quadrature_real_axis,
};

std::string_view to_string(Method m) noexcept;
/// Accepts "closed" / "quad" / "quad-real". Throws DomainError otherwise.
Method method_from_string(std::string_view name);

/// Integrand exponent collected as exp(-a y^2 + b y + c).
struct ChirpCoefficients {
  Complex a;
  Complex b;
  Complex c;
};

ChirpCoefficients chirp_coefficients(const SetupGeometry& g,
                                     const SourceModel& s) noexcept;

/// Log of the integrand evaluated term by term from the physical phases and
/// envelope; valid for complex y (the integrand is entire).
Complex integrand_exponent(Complex y, const SetupGeometry& g,
                           const SourceModel& s) noexcept;

/// Centre of the source envelope seen in the edge plane (where y' = 0).
double envelope_center(const SetupGeometry& g) noexcept;
/// 1/e half-width of the source envelope in the edge plane, sigma*D/d1.
double envelope_width(const SetupGeometry& g, const SourceModel& s) noexcept;
/// Fresnel fringe scale sqrt(lambda * d_eff).
double fringe_scale(const SetupGeometry& g, const SourceModel& s) noexcept;

Complex coincidence_amplitude(const SetupGeometry& g, const SourceModel& s,
                              double edge, Method method = Method::closed_form);

/// Amplitude with no edge in place (upper limit +inf), closed form.
Complex unblocked_amplitude(const SetupGeometry& g, const SourceModel& s);

/// p12 = |a12|^2.
double coincidence_probability(const SetupGeometry& g, const SourceModel& s,
                               double edge,
                               Method method = Method::closed_form);

double unblocked_probability(const SetupGeometry& g, const SourceModel& s);

struct EdgePattern {
  std::vector<double> edge_positions;
  std::vector<double> p12;
  double unblocked = 0.0;
  SetupGeometry geometry;
  SourceModel source;
  Method method = Method::closed_form;

  /// p12 divided by its unblocked (+inf edge) value.
  std::vector<double> normalized() const;
};

/// p12 at every grid point; grid must be strictly increasing and non-empty.
EdgePattern edge_sweep(const SetupGeometry& g, const SourceModel& s,
                       std::span<const double> grid,
                       Method method = Method::closed_form);

/// Where unblocked p12 is significant as a function of detector-1 position.
/// p12_unblocked(y1) is Gaussian; width is its 1/e amplitude half-width.
struct Detector1Acceptance {
  double center;
  double width;
};

Detector1Acceptance detector1_acceptance(const SetupGeometry& g,
                                         const SourceModel& s);

struct SinglesTrace {
  double y1_min;
  double y1_max;
  int points;
};

/// Trace covering acceptance.center +/- 3 acceptance widths.
SinglesTrace default_singles_trace(const SetupGeometry& g, const SourceModel& s,
                                   int points = 64);

struct SinglesCurve {
  std::vector<double> edge_positions;
  std::vector<double> s2;
  double s2_unblocked = 0.0;
  /// Detector-1 singles: its arm has no obstruction, so this is flat.
  double s1 = 0.0;

  std::vector<double> s2_normalized() const;
  double s1_normalized() const { return s1 / s2_unblocked; }
};

/// Detector-2 singles: p12 summed with uniform weights over detector-1
/// positions spread uniformly across the trace. The trace must span at least
/// six acceptance widths with at least 32 points (DomainError otherwise).
SinglesCurve traced_singles(const SetupGeometry& g, const SourceModel& s,
                            std::span<const double> grid,
                            const SinglesTrace& trace,
                            Method method = Method::closed_form);

/// Classical knife-edge intensity (C(v)+1/2)^2 + (S(v)+1/2)^2 scaled so the
/// unblocked limit is 1, v = (dy - y_c) sqrt(2 / (lambda d_eff)).
std::vector<double> classical_edge_pattern(double d_eff, double y_c,
                                           double wavelength,
                                           std::span<const double> grid);

/// n points from y_c - 3 fringe scales to envelope centre + 4 envelope widths.
std::vector<double> default_edge_grid(const SetupGeometry& g,
                                      const SourceModel& s,
                                      std::size_t n = 512);

/// n evenly spaced points including both ends (n >= 2).
std::vector<double> linspace(double start, double stop, std::size_t n);

}  // namespace edgediff
