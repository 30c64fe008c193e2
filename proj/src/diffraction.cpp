#include "edgediff/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgediff/errors.hpp"
#include "edgediff/parallel.hpp"
#include "edgediff/quadrature.hpp"
#include "edgediff/specfun.hpp"

namespace edgediff {

namespace {

constexpr Complex kI{0.0, 1.0};

// exp(-t^2) < 1e-17 beyond this; used for Gaussian-decay truncation.
constexpr double kGaussianCutoff = 6.3;
// sqrt(ln 1e16): the source envelope exp(-y'^2/sigma^2) is below 1e-16 for
// |y'| > kEnvelopeCutoff * sigma.
const double kEnvelopeCutoff = std::sqrt(16.0 * std::numbers::ln10);

constexpr double kQuadRelTol = 1e-12;

// Below this |a (U - m)^2| the edge sits close enough to the saddle that a
// straight segment from the saddle is well conditioned (growth <= e^9).
constexpr double kSegmentRegion = 9.0;

Complex checked_integrand(Complex y, const SetupGeometry& g,
                          const SourceModel& s) {
  return std::exp(integrand_exponent(y, g, s));
}

// Amplitude by numerical steepest descent. The quadratic's coefficients are
// recovered from integrand_exponent by symmetric differences, exact for a
// quadratic, so this route does not share chirp_coefficients().
Complex amplitude_steepest_descent(const SetupGeometry& g,
                                   const SourceModel& s, double upper) {
  auto exponent = [&](Complex y) { return integrand_exponent(y, g, s); };

  const double h = std::sqrt(g.d3() / s.k0());
  const Complex e0 = exponent(0.0);
  const Complex ep = exponent(h);
  const Complex em = exponent(-h);
  const Complex a = -(ep + em - 2.0 * e0) / (2.0 * h * h);
  const Complex b = (ep - em) / (2.0 * h);
  const Complex saddle = b / (2.0 * a);
  const Complex root_a = std::sqrt(a);
  const Complex saddle_value = std::exp(exponent(saddle));
  const double tol_abs = 1e-15 * std::abs(saddle_value) / std::abs(root_a);

  // Steepest-descent line through the saddle: y = saddle + t / sqrt(a), on
  // which the integrand is exp(E_saddle - t^2).
  auto saddle_line = [&](double lo, double hi) {
    auto f = [&](double t) {
      return std::exp(exponent(saddle + t / root_a)) / root_a;
    };
    return integrate_complex(f, lo, hi, tol_abs, kQuadRelTol).value;
  };

  const Complex offset = Complex{upper, 0.0} - saddle;
  const Complex A = a * offset * offset;
  if (std::abs(A) <= kSegmentRegion) {
    // (-inf, saddle] along the descent line, then saddle -> upper.
    const Complex half = saddle_line(-kGaussianCutoff, 0.0);
    auto segment = [&](double t) {
      return std::exp(exponent(saddle + t * offset)) * offset;
    };
    return half + integrate_complex(segment, 0.0, 1.0, tol_abs, kQuadRelTol)
                      .value;
  }

  // Descent path leaving the endpoint: y(q) = saddle + offset sqrt(1 + q^2/A)
  // with exp(E(y(q))) = exp(E(upper) - q^2). 1 + q^2/A moves along a ray from
  // 1 that never crosses the negative real axis unless A < 0, so the
  // principal root is continuous in q.
  const Complex inv_A = 1.0 / A;
  auto descent = [&](double q) {
    const Complex root = std::sqrt(1.0 + q * q * inv_A);
    const Complex y = saddle + offset * root;
    const Complex dy = offset * q * inv_A / root;
    return std::exp(exponent(y)) * dy;
  };
  const Complex tail =
      integrate_complex(descent, 0.0, kGaussianCutoff, tol_abs, kQuadRelTol)
          .value;
  // The path ends at saddle + offset*sqrt(1/A)*q ~ saddle +/- q/sqrt(a).
  const Complex direction = offset * std::sqrt(inv_A) * root_a;
  if (direction.real() < 0.0) {
    // Path runs to -inf: int_{-inf}^{U} = -int_{U}^{-inf}.
    return -tail;
  }
  return saddle_line(-kGaussianCutoff, kGaussianCutoff) - tail;
}

Complex amplitude_real_axis(const SetupGeometry& g, const SourceModel& s,
                            double upper) {
  const double ratio = g.d1() / g.unfolded_distance();
  const double reach = kEnvelopeCutoff * s.sigma();
  const double lower = g.y1() + (-reach - g.y1()) / ratio;
  const double right = g.y1() + (reach - g.y1()) / ratio;
  upper = std::min(upper, right);
  if (upper <= lower) return {};

  const double k = s.k0();
  const double D = g.unfolded_distance();
  QuadratureOptions options;
  options.phase_rate = [&](double y) {
    return k * ((y - g.y1()) / D + (y - g.y2()) / g.d3());
  };
  auto f = [&](double y) { return checked_integrand(y, g, s); };
  // Scale for the absolute floor: the integrand is at most 1 in modulus.
  const double tol_abs = 1e-15 * std::sqrt(2.0 * D * g.d3() / (k * (D + g.d3())));
  return integrate_complex(f, lower, upper, tol_abs, kQuadRelTol, options)
      .value;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::closed_form:
      return "closed";
    case Method::quadrature:
      return "quad";
    case Method::quadrature_real_axis:
      return "quad-real";
  }
  return "closed";
}

Method method_from_string(std::string_view name) {
  if (name == "closed") return Method::closed_form;
  if (name == "quad") return Method::quadrature;
  if (name == "quad-real") return Method::quadrature_real_axis;
  throw DomainError("unknown method '" + std::string(name) +
                    "' (expected closed, quad or quad-real)");
}

ChirpCoefficients chirp_coefficients(const SetupGeometry& g,
                                     const SourceModel& s) noexcept {
  const double D = g.unfolded_distance();
  const double r = g.d1() / D;
  const double q = 1.0 - r;
  const double inv_s2 = 1.0 / (s.sigma() * s.sigma());
  const double k = s.k0();
  const double y1 = g.y1();
  const double y2 = g.y2();
  const double d3 = g.d3();

  // y'^2 = r^2 y^2 + 2 r q y1 y + q^2 y1^2
  return {
      Complex{r * r * inv_s2, -0.5 * k * (1.0 / D + 1.0 / d3)},
      Complex{-2.0 * r * q * y1 * inv_s2, -k * (y1 / D + y2 / d3)},
      Complex{-q * q * y1 * y1 * inv_s2,
              0.5 * k * (y1 * y1 / D + y2 * y2 / d3)},
  };
}

Complex integrand_exponent(Complex y, const SetupGeometry& g,
                           const SourceModel& s) noexcept {
  const double D = g.unfolded_distance();
  const Complex source = g.y1() + (y - g.y1()) * (g.d1() / D);
  const Complex to_d1 = y - g.y1();
  const Complex to_d2 = y - g.y2();
  const double k = s.k0();
  return -source * source / (s.sigma() * s.sigma()) +
         kI * k * (to_d1 * to_d1 / (2.0 * D) + to_d2 * to_d2 / (2.0 * g.d3()));
}

double envelope_center(const SetupGeometry& g) noexcept {
  // y' = 0  <=>  y = y1 (1 - D/d1)
  return g.y1() * (1.0 - g.unfolded_distance() / g.d1());
}

double envelope_width(const SetupGeometry& g, const SourceModel& s) noexcept {
  return s.sigma() * g.unfolded_distance() / g.d1();
}

double fringe_scale(const SetupGeometry& g, const SourceModel& s) noexcept {
  return std::sqrt(s.wavelength() * effective_geometry(g).d_eff);
}

Complex coincidence_amplitude(const SetupGeometry& g, const SourceModel& s,
                              double edge, Method method) {
  if (!std::isfinite(edge)) {
    throw DomainError("edge position must be finite");
  }
  switch (method) {
    case Method::closed_form: {
      const auto [a, b, c] = chirp_coefficients(g, s);
      return gaussian_chirp_cumulative(a, b, c, edge);
    }
    case Method::quadrature:
      return amplitude_steepest_descent(g, s, edge);
    case Method::quadrature_real_axis:
      return amplitude_real_axis(g, s, edge);
  }
  throw DomainError("unknown method");
}

Complex unblocked_amplitude(const SetupGeometry& g, const SourceModel& s) {
  const auto [a, b, c] = chirp_coefficients(g, s);
  return gaussian_chirp_full(a, b, c);
}

double coincidence_probability(const SetupGeometry& g, const SourceModel& s,
                               double edge, Method method) {
  return std::norm(coincidence_amplitude(g, s, edge, method));
}

double unblocked_probability(const SetupGeometry& g, const SourceModel& s) {
  return std::norm(unblocked_amplitude(g, s));
}

std::vector<double> EdgePattern::normalized() const {
  std::vector<double> out(p12.size());
  std::transform(p12.begin(), p12.end(), out.begin(),
                 [this](double p) { return p / unblocked; });
  return out;
}

namespace {

void require_increasing(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("edge grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError("edge grid is not finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("edge grid must be strictly increasing");
    }
  }
}

}  // namespace

EdgePattern edge_sweep(const SetupGeometry& g, const SourceModel& s,
                       std::span<const double> grid, Method method) {
  require_increasing(grid);
  EdgePattern pattern{
      .edge_positions = {grid.begin(), grid.end()},
      .p12 = std::vector<double>(grid.size()),
      .unblocked = unblocked_probability(g, s),
      .geometry = g,
      .source = s,
      .method = method,
  };
  detail::parallel_for(grid.size(), [&](std::size_t i) {
    pattern.p12[i] = coincidence_probability(g, s, grid[i], method);
  });
  return pattern;
}

Detector1Acceptance detector1_acceptance(const SetupGeometry& g,
                                         const SourceModel& s) {
  // log|unblocked amplitude| = Re(c + b^2/4a) - log|a|/4 + const, and a does
  // not depend on y1, so the y1 dependence is an exact quadratic.
  auto log_mag = [&](double y1) {
    const auto [a, b, c] = chirp_coefficients(g.with_y1(y1), s);
    return (c + b * b / (4.0 * a)).real();
  };
  const double h = envelope_width(g, s);
  const double q0 = log_mag(0.0);
  const double qp = log_mag(h);
  const double qm = log_mag(-h);
  const double curvature = -(qp + qm - 2.0 * q0) / (2.0 * h * h);
  if (!(curvature > 0.0)) {
    throw DomainError("detector-1 acceptance is not bounded");
  }
  const double slope = (qp - qm) / (2.0 * h);
  return {slope / (2.0 * curvature), 1.0 / std::sqrt(curvature)};
}

SinglesTrace default_singles_trace(const SetupGeometry& g, const SourceModel& s,
                                   int points) {
  const auto acc = detector1_acceptance(g, s);
  return {acc.center - 3.0 * acc.width, acc.center + 3.0 * acc.width, points};
}

std::vector<double> SinglesCurve::s2_normalized() const {
  std::vector<double> out(s2.size());
  std::transform(s2.begin(), s2.end(), out.begin(),
                 [this](double v) { return v / s2_unblocked; });
  return out;
}

SinglesCurve traced_singles(const SetupGeometry& g, const SourceModel& s,
                            std::span<const double> grid,
                            const SinglesTrace& trace, Method method) {
  require_increasing(grid);
  if (trace.points < 32) {
    throw DomainError("singles trace needs at least 32 detector-1 points");
  }
  const auto acc = detector1_acceptance(g, s);
  const double span = trace.y1_max - trace.y1_min;
  if (!(span >= 6.0 * acc.width * (1.0 - 1e-12))) {
    throw DomainError("singles trace must span at least 6 acceptance widths (" +
                      std::to_string(6.0 * acc.width) + " m)");
  }
  const auto y1s = linspace(trace.y1_min, trace.y1_max,
                            static_cast<std::size_t>(trace.points));

  SinglesCurve curve;
  curve.edge_positions.assign(grid.begin(), grid.end());
  curve.s2.assign(grid.size(), 0.0);
  for (double y1 : y1s) {
    curve.s2_unblocked += unblocked_probability(g.with_y1(y1), s);
  }
  curve.s1 = curve.s2_unblocked;

  detail::parallel_for(grid.size(), [&](std::size_t i) {
    double sum = 0.0;
    for (double y1 : y1s) {
      sum += coincidence_probability(g.with_y1(y1), s, grid[i], method);
    }
    curve.s2[i] = sum;
  });
  return curve;
}

std::vector<double> classical_edge_pattern(double d_eff, double y_c,
                                           double wavelength,
                                           std::span<const double> grid) {
  if (!(d_eff > 0.0) || !(wavelength > 0.0)) {
    throw DomainError("classical edge pattern needs d_eff > 0, wavelength > 0");
  }
  const double scale = std::sqrt(2.0 / (wavelength * d_eff));
  std::vector<double> out;
  out.reserve(grid.size());
  for (double dy : grid) {
    const auto [c, s] = fresnel_cs((dy - y_c) * scale);
    out.push_back(0.5 * ((c + 0.5) * (c + 0.5) + (s + 0.5) * (s + 0.5)));
  }
  return out;
}

std::vector<double> default_edge_grid(const SetupGeometry& g,
                                      const SourceModel& s, std::size_t n) {
  const double start = effective_geometry(g).y_c - 3.0 * fringe_scale(g, s);
  const double stop = envelope_center(g) + 4.0 * envelope_width(g, s);
  if (!(stop > start)) {
    throw DomainError("default edge grid is empty for this geometry");
  }
  return linspace(start, stop, n);
}

std::vector<double> linspace(double start, double stop, std::size_t n) {
  if (n < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> out(n);
  const double step = (stop - start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = start + step * static_cast<double>(i);
  }
  out.back() = stop;
  return out;
}

}  // namespace edgediff
