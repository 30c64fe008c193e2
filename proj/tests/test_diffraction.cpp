#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "edgediff/analysis.hpp"
#include "edgediff/diffraction.hpp"
#include "edgediff/errors.hpp"
#include "edgediff/specfun.hpp"
#include "test_support.hpp"

using namespace edgediff;
using namespace edgediff::testing;

namespace {

// Direct real-axis integral of the physical integrand with the test-only
// Gauss-Legendre rule; panels are sized to a fraction of the local chirp
// period so this stays independent of the library quadrature.
Complex brute_force_amplitude(const SetupGeometry& g, const SourceModel& s,
                              double edge) {
  const double D = g.unfolded_distance();
  const double k = s.k0();
  const double center = g.y1() * (1.0 - D / g.d1());
  const double width = s.sigma() * D / g.d1();
  const double lo = center - 6.5 * width;
  const double hi = std::min(edge, center + 6.5 * width);
  if (hi <= lo) return 0.0;
  auto f = [&](double y) {
    const double yp = g.y1() + (y - g.y1()) * g.d1() / D;
    const double phase = 0.5 * k *
                         ((y - g.y1()) * (y - g.y1()) / D +
                          (y - g.y2()) * (y - g.y2()) / g.d3());
    return std::exp(Complex{-yp * yp / (s.sigma() * s.sigma()), phase});
  };
  const double max_rate =
      k * std::max({std::abs(lo - g.y1()), std::abs(hi - g.y1())}) / D +
      k * std::max(std::abs(lo - g.y2()), std::abs(hi - g.y2())) / g.d3();
  const int panels =
      std::max(64, static_cast<int>(std::ceil((hi - lo) * max_rate / 0.5)));
  return gauss_legendre(f, lo, hi, panels);
}

}  // namespace

TEST_CASE("method names round trip") {
  for (Method m : {Method::closed_form, Method::quadrature,
                   Method::quadrature_real_axis}) {
    CHECK(method_from_string(to_string(m)) == m);
  }
  CHECK(method_from_string("closed") == Method::closed_form);
  CHECK(method_from_string("quad") == Method::quadrature);
  CHECK_THROWS_AS(method_from_string("simpson"), DomainError);
}

TEST_CASE("chirp coefficients reproduce the integrand exponent") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto co = chirp_coefficients(g, s);
  const double D = g.unfolded_distance();
  const double r = g.d1() / D;
  CHECK(co.a.real() == doctest::Approx(r * r / (s.sigma() * s.sigma())));
  CHECK(co.a.imag() ==
        doctest::Approx(-0.5 * s.k0() * (1.0 / D + 1.0 / g.d3())));
  for (double y : {-2e-3, -0.3e-3, 0.0, 0.7e-3, 1.9e-3, 4e-3}) {
    const Complex lhs = -co.a * y * y + co.b * y + co.c;
    const Complex rhs = integrand_exponent(y, g, s);
    CHECK(std::abs(lhs.real() - rhs.real()) < 1e-9);
    // Phase compared modulo 2 pi.
    const double dphi = std::remainder(lhs.imag() - rhs.imag(), 2 * std::numbers::pi);
    CHECK(std::abs(dphi) < 1e-7);
  }
}

TEST_CASE("envelope and fringe scales at the reference geometry") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  CHECK(envelope_center(g) == doctest::Approx(0.15e-3 * (1.0 - 0.78 / 0.5)));
  CHECK(envelope_width(g, s) == doctest::Approx(0.85e-3 * 0.78 / 0.5));
  CHECK(fringe_scale(g, s) == doctest::Approx(std::sqrt(810e-9 * 0.1716)));
  CHECK(fringe_scale(g, s) == doctest::Approx(0.373e-3).epsilon(2e-3));
}

TEST_CASE("closed form matches quadrature at the reference geometry") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const double edge = 1.2e-3;
  const Complex closed = coincidence_amplitude(g, s, edge, Method::closed_form);
  const Complex quad = coincidence_amplitude(g, s, edge, Method::quadrature);
  const Complex real_axis =
      coincidence_amplitude(g, s, edge, Method::quadrature_real_axis);
  CHECK(relative_error(quad, closed) <= 1e-8);
  CHECK(relative_error(real_axis, closed) <= 1e-8);
  // Independent brute-force integral.
  CHECK(relative_error(brute_force_amplitude(g, s, edge), closed) <= 1e-8);
}

TEST_CASE("closed form matches brute force across the reference sweep") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  for (double edge = -1e-3; edge <= 4e-3; edge += 0.37e-3) {
    const Complex closed = coincidence_amplitude(g, s, edge);
    CAPTURE(edge);
    CHECK(relative_error(brute_force_amplitude(g, s, edge), closed) <= 1e-8);
  }
}

TEST_CASE("methods agree on randomized geometries") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> len(0.05, 2.0), off(-3e-3, 3e-3),
      sig(0.2e-3, 3e-3), lam(400e-9, 1000e-9), unit(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    const SetupGeometry g(len(rng), len(rng), len(rng), off(rng), off(rng));
    const SourceModel s(lam(rng), sig(rng));
    const double edge = envelope_center(g) +
                        (unit(rng) * 6.0 - 3.0) * envelope_width(g, s);
    const Complex closed = coincidence_amplitude(g, s, edge);
    const Complex quad = coincidence_amplitude(g, s, edge, Method::quadrature);
    CAPTURE(i);
    CHECK(relative_error(quad, closed) <= 1e-8);
  }
}

TEST_CASE("edge far below the envelope blocks everything") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const double edge = envelope_center(g) - 10.0 * envelope_width(g, s);
  const double unblocked = std::abs(unblocked_amplitude(g, s));
  CHECK(std::abs(coincidence_amplitude(g, s, edge)) < 1e-12 * unblocked);
  CHECK(std::abs(coincidence_amplitude(g, s, edge, Method::quadrature)) <
        1e-12 * unblocked);
  CHECK(coincidence_probability(g, s, edge) < 1e-24 * unblocked * unblocked);
}

TEST_CASE("edge far above the envelope saturates") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const Complex full = unblocked_amplitude(g, s);
  const auto co = chirp_coefficients(g, s);
  CHECK(relative_error(full, gaussian_chirp_full(co.a, co.b, co.c)) < 1e-14);
  CHECK(relative_error(coincidence_amplitude(g, s, 10e-3), full) <= 1e-6);
  CHECK(relative_error(coincidence_amplitude(g, s, 10e-3, Method::quadrature),
                       full) <= 1e-6);
}

TEST_CASE("probability is the squared modulus") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  for (double edge : {-0.5e-3, 0.4e-3, 1.6e-3}) {
    const Complex a = coincidence_amplitude(g, s, edge);
    CHECK(coincidence_probability(g, s, edge) == std::norm(a));
    // A global phase factor never changes p12.
    const Complex rotated = a * std::exp(Complex{0.0, 1.234});
    CHECK(std::norm(rotated) == doctest::Approx(std::norm(a)).epsilon(1e-14));
  }
  CHECK(unblocked_probability(g, s) == std::norm(unblocked_amplitude(g, s)));
}

TEST_CASE("edge sweep basics") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const std::vector<double> one{0.8e-3};
  const auto single = edge_sweep(g, s, one);
  REQUIRE(single.p12.size() == 1);
  CHECK(single.p12[0] == coincidence_probability(g, s, 0.8e-3));
  CHECK(single.unblocked == unblocked_probability(g, s));

  const std::vector<double> bad{1e-3, 1e-3};
  CHECK_THROWS_AS(edge_sweep(g, s, bad), DomainError);
  CHECK_THROWS_AS(edge_sweep(g, s, std::vector<double>{}), DomainError);

  const auto grid = linspace(-1e-3, 4e-3, 64);
  const auto a = edge_sweep(g, s, grid);
  const auto b = edge_sweep(g, s, grid);
  CHECK(a.p12 == b.p12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.p12[i] == coincidence_probability(g, s, grid[i]));
  }
}

TEST_CASE("reference pattern has fringes and saturates") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto grid = linspace(-1e-3, 4e-3, 251);  // 0.02 mm step
  const auto pattern = edge_sweep(g, s, grid);
  const auto p = pattern.normalized();
  CHECK(strict_local_maxima(p).size() >= 3);
  CHECK(std::abs(p.back() - 1.0) < 0.02);
  for (double v : pattern.p12) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
}

TEST_CASE("default grid ends beyond the saturation point") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto grid = default_edge_grid(g, s);
  REQUIRE(grid.size() == 512);
  const auto eff = effective_geometry(g);
  CHECK(grid.front() == doctest::Approx(eff.y_c - 3.0 * fringe_scale(g, s)));
  CHECK(grid.back() ==
        doctest::Approx(envelope_center(g) + 4.0 * envelope_width(g, s)));
  const auto pattern = edge_sweep(g, s, grid);
  CHECK(std::abs(pattern.normalized().back() - 1.0) <= 0.02);
}

TEST_CASE("moving detector 2 shifts the pattern") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const double step = 0.01e-3;
  const auto grid = linspace(-1e-3, 4e-3, 501);
  const double D = g.unfolded_distance();
  const auto reference = edge_sweep(g, s, grid).normalized();
  for (double delta : {-0.4e-3, -0.2e-3, 0.2e-3, 0.4e-3}) {
    const auto moved =
        edge_sweep(g.with_y2(g.y2() + delta), s, grid).normalized();
    const double lag = correlation_lag(reference, moved, step);
    CAPTURE(delta);
    CHECK(std::abs(lag - delta * D / (D + g.d3())) <= step + 0.03e-3);
  }
}

TEST_CASE("large source width reproduces the classical knife edge") {
  const auto g = reference_geometry();
  const auto s = reference_source(50e-3);
  const auto eff = effective_geometry(g);
  CHECK(eff.d_eff == doctest::Approx(0.1716));
  const auto grid = linspace(-1e-3, 4e-3, 256);
  const auto quantum = edge_sweep(g, s, grid).normalized();
  const auto classical =
      classical_edge_pattern(eff.d_eff, eff.y_c, s.wavelength(), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(quantum[i] - classical[i]) <= 0.01);
  }
  const std::vector<double> at_edge{eff.y_c};
  const double shadow =
      coincidence_probability(g, s, eff.y_c) / unblocked_probability(g, s);
  CHECK(std::abs(shadow - 0.25) <= 0.01);
  CHECK(classical_edge_pattern(eff.d_eff, eff.y_c, s.wavelength(), at_edge)[0] ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("classical knife edge limits") {
  const std::vector<double> grid{-1.0, 1.0};
  const auto c = classical_edge_pattern(0.2, 0.0, 800e-9, grid);
  CHECK(c[0] < 1e-6);
  CHECK(std::abs(c[1] - 1.0) < 1e-3);
  CHECK_THROWS_AS(classical_edge_pattern(0.0, 0.0, 800e-9, grid), DomainError);
}

TEST_CASE("source distance is a redundant parameter when y1 = 0") {
  // Moving the source while keeping D fixed and sigma * D / d1 fixed leaves
  // the integrand unchanged.
  const SetupGeometry g(0.5, 0.28, 0.22, 0.0, 1.52e-3);
  const SourceModel s(810e-9, 0.85e-3);
  const double shift = 0.13;
  const SetupGeometry g2(g.d1() + shift, g.d2() - shift, g.d3(), 0.0, g.y2());
  const SourceModel s2(s.wavelength(), s.sigma() * g2.d1() / g.d1());
  const auto grid = linspace(-1e-3, 4e-3, 41);
  const auto p = edge_sweep(g, s, grid);
  const auto q = edge_sweep(g2, s2, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(p.p12[i] - q.p12[i]) <= 1e-10 * p.unblocked);
  }
}

TEST_CASE("tail is nondecreasing past the last extremum") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto grid = default_edge_grid(g, s);
  const auto p = edge_sweep(g, s, grid).p12;
  const auto maxima = strict_local_maxima(p);
  const auto minima = strict_local_minima(p);
  std::size_t last = 0;
  if (!maxima.empty()) last = std::max(last, maxima.back());
  if (!minima.empty()) last = std::max(last, minima.back());
  const double start = grid[last] + fringe_scale(g, s);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i - 1] < start) continue;
    CHECK(p[i] >= p[i - 1] * (1.0 - 1e-6));
  }
}

TEST_CASE("detector-1 acceptance") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto acc = detector1_acceptance(g, s);
  CHECK(acc.width > 0.0);
  // The unblocked p12 falls to 1/e^2 of its peak one width from the centre.
  const double peak = unblocked_probability(g.with_y1(acc.center), s);
  const double off = unblocked_probability(g.with_y1(acc.center + acc.width), s);
  CHECK(off / peak == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
  const double near = unblocked_probability(g.with_y1(acc.center + 1e-6), s);
  CHECK(near <= peak);

  const auto trace = default_singles_trace(g, s);
  CHECK(trace.points == 64);
  CHECK(trace.y1_min == doctest::Approx(acc.center - 3.0 * acc.width));
  CHECK(trace.y1_max == doctest::Approx(acc.center + 3.0 * acc.width));
}

TEST_CASE("traced singles are flat while coincidences fringe") {
  const auto g = reference_geometry();
  const auto s = reference_source();
  const auto grid = linspace(-1e-3, 4e-3, 251);
  const auto trace = default_singles_trace(g, s);
  const auto curve = traced_singles(g, s, grid, trace);
  const auto s2 = curve.s2_normalized();
  REQUIRE(s2.size() == grid.size());
  CHECK(s2.front() < 1e-3);
  CHECK(std::abs(s2.back() - 1.0) < 0.02);
  CHECK(curve.s1_normalized() == doctest::Approx(1.0));

  const auto p = edge_sweep(g, s, grid).normalized();
  const auto maxima = strict_local_maxima(p);
  REQUIRE(!maxima.empty());
  const double step = grid[1] - grid[0];
  const auto window =
      static_cast<std::size_t>(std::lround(2.0 * fringe_scale(g, s) / step));
  CHECK(max_window_visibility(s2, maxima.front(), window) < 0.05);

  SinglesTrace narrow = trace;
  narrow.y1_max = narrow.y1_min + 0.5 * (trace.y1_max - trace.y1_min);
  CHECK_THROWS_AS(traced_singles(g, s, grid, narrow), DomainError);
  SinglesTrace sparse = trace;
  sparse.points = 16;
  CHECK_THROWS_AS(traced_singles(g, s, grid, sparse), DomainError);
}

TEST_CASE("linspace") {
  const auto v = linspace(0.0, 1.0, 5);
  CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), DomainError);
}
