#include <cmath>
#include <limits>
#include <numbers>

#include "edgediff/errors.hpp"
#include "edgediff/specfun.hpp"

namespace edgediff {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr double kSeriesLimit = 1.5;
constexpr int kMaxIterations = 200;

FresnelCS fresnel_series(double x) {
  // Alternate between the C and S series, term index k over powers of
  // (pi/2) x^2: C collects even k, S odd k.
  const double t = 0.5 * std::numbers::pi * x * x;
  double term = x;  // x * t^k / k!
  double c = x;
  double s = 0.0;
  bool odd = true;
  double sign = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= t / k;
    const double contribution = term / (2 * k + 1);
    if (odd) {
      s += sign * contribution;
      sign = -sign;
    } else {
      c += sign * contribution;
    }
    odd = !odd;
    if (k > 2 && contribution < kEps * (std::abs(c) + std::abs(s))) break;
  }
  return {c, s};
}

FresnelCS fresnel_continued_fraction(double x) {
  // erfc-type continued fraction evaluated with the modified Lentz method.
  const double pix2 = std::numbers::pi * x * x;
  Complex b{1.0, -pix2};
  Complex cc{1.0 / kTiny, 0.0};
  Complex d = 1.0 / b;
  Complex h = d;
  int n = -1;
  for (int k = 2; k <= kMaxIterations; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const Complex del = cc * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  h *= Complex{x, -x};
  const Complex phase{std::cos(0.5 * pix2), std::sin(0.5 * pix2)};
  const Complex cs = Complex{0.5, 0.5} * (1.0 - phase * h);
  return {cs.real(), cs.imag()};
}

}  // namespace

FresnelCS fresnel_cs(double u) {
  if (!std::isfinite(u)) throw DomainError("fresnel_cs: argument must be finite");
  const double x = std::abs(u);
  FresnelCS r = x < kSeriesLimit ? fresnel_series(x)
                                 : fresnel_continued_fraction(x);
  if (u < 0.0) {
    r.c = -r.c;
    r.s = -r.s;
  }
  return r;
}

}  // namespace edgediff
