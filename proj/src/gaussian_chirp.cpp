#include <cmath>
#include <numbers>

#include "edgediff/errors.hpp"
#include "edgediff/specfun.hpp"

namespace edgediff {

namespace {

constexpr double kMaxExp = 708.0;

void check_arguments(Complex a, Complex b, Complex c) {
  for (Complex v : {a, b, c}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("gaussian chirp: coefficients must be finite");
    }
  }
  if (!(a.real() > 0.0)) {
    throw DomainError("gaussian chirp: requires Re(a) > 0");
  }
}

Complex checked_exp(Complex e, const char* what) {
  if (e.real() > kMaxExp) throw RangeError(what);
  return std::exp(e);
}

}  // namespace

Complex gaussian_chirp_full(Complex a, Complex b, Complex c) {
  check_arguments(a, b, c);
  const Complex saddle = c + b * b / (4.0 * a);
  return std::sqrt(std::numbers::pi / a) *
         checked_exp(saddle, "gaussian chirp: exp(c + b^2/4a) overflows");
}

Complex gaussian_chirp_cumulative(Complex a, Complex b, Complex c,
                                  double upper) {
  check_arguments(a, b, c);
  if (!std::isfinite(upper)) {
    throw DomainError("gaussian chirp: upper limit must be finite");
  }
  const Complex root_a = std::sqrt(a);
  const Complex m = b / (2.0 * a);
  const Complex z = root_a * (m - upper);  // erfc argument
  const Complex prefactor = 0.5 * std::sqrt(std::numbers::pi / a);
  const Complex endpoint =
      checked_exp(-a * upper * upper + b * upper + c,
                  "gaussian chirp: integrand overflows at the upper limit");

  // erfc(z) = exp(-z^2) w(iz) and exp(c + b^2/4a - z^2) is the endpoint value.
  if (z.real() >= 0.0) {
    return prefactor * endpoint * faddeeva(Complex{0.0, 1.0} * z);
  }
  // erfc(z) = 2 - exp(-z^2) w(-iz) keeps w in the upper half plane.
  return 2.0 * prefactor *
             checked_exp(c + b * b / (4.0 * a),
                         "gaussian chirp: exp(c + b^2/4a) overflows") -
         prefactor * endpoint * faddeeva(Complex{0.0, -1.0} * z);
}

}  // namespace edgediff
