#include <cmath>
#include <limits>

#include "edgediff/errors.hpp"
#include "edgediff/specfun.hpp"

namespace edgediff {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257388;
constexpr double kMaxExp = 708.0;

// w(z) for x >= 0, y >= 0.
Complex faddeeva_first_quadrant(double x, double y) {
  const double xs = x / 6.3;
  const double ys = y / 4.4;
  double qrho = xs * xs + ys * ys;

  if (qrho < 0.085264) {
    // Power series for erf-like sum, then multiply by exp(-z^2).
    const double xquad = x * x - y * y;
    const double yquad = 2.0 * x * y;
    const double rho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * rho)) + 4;
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * y + ysum * x) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * x - ysum * y);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    return {u1 * u2 - v1 * v2, u1 * v2 + v1 * u2};
  }

  double h = 0.0;
  int kapn = 0;
  int nu = 0;
  if (qrho > 1.0) {
    qrho = std::sqrt(qrho);
    nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0)) + 8;
  } else {
    qrho = (1.0 - ys) * std::sqrt(1.0 - qrho);
    h = 1.88 * qrho;
    kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho)) + 4;
    nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho)) + 8;
  }

  const bool taylor = h > 0.0;
  const double h2 = 2.0 * h;
  double qlambda = taylor ? std::pow(h2, kapn) : 0.0;
  double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
  for (int n = nu; n >= 0; --n) {
    const double np1 = n + 1;
    const double tx = y + h + np1 * rx;
    const double ty = x - np1 * ry;
    const double c = 0.5 / (tx * tx + ty * ty);
    rx = c * tx;
    ry = c * ty;
    if (taylor && n <= kapn) {
      const double t = qlambda + sx;
      sx = rx * t - ry * sy;
      sy = ry * t + rx * sy;
      qlambda /= h2;
    }
  }
  double u = kTwoOverSqrtPi * (taylor ? sx : rx);
  const double v = kTwoOverSqrtPi * (taylor ? sy : ry);
  if (y == 0.0) u = std::exp(-x * x);
  return {u, v};
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

}  // namespace

Complex faddeeva(Complex z) {
  require_finite(z, "faddeeva");
  const double x = z.real();
  const double y = z.imag();

  if (y >= 0.0) {
    const Complex w = faddeeva_first_quadrant(std::abs(x), y);
    // w(-conj(z)) = conj(w(z))
    return x < 0.0 ? std::conj(w) : w;
  }

  // w(z) = 2 exp(-z^2) - w(-z), with -z in the upper half plane.
  const double re_exponent = y * y - x * x;
  if (re_exponent > kMaxExp) {
    throw RangeError("faddeeva: exp(-z^2) overflows for Im(z) < 0");
  }
  const Complex w_neg = faddeeva(-z);
  const double phase = -2.0 * x * y;
  const double mag = 2.0 * std::exp(re_exponent);
  return Complex{mag * std::cos(phase), mag * std::sin(phase)} - w_neg;
}

Complex erfc_complex(Complex z) {
  require_finite(z, "erfc_complex");
  const double x = z.real();
  const double y = z.imag();
  // exp(-z^2) has modulus exp(y^2 - x^2).
  const double re_exponent = y * y - x * x;
  if (re_exponent > kMaxExp) {
    throw RangeError("erfc_complex: exp(-z^2) overflows");
  }
  const double mag = std::exp(re_exponent);
  const double phase = -2.0 * x * y;
  const Complex gauss{mag * std::cos(phase), mag * std::sin(phase)};
  if (x >= 0.0) {
    // iz has Im = x >= 0.
    return gauss * faddeeva(Complex{-y, x});
  }
  // erfc(z) = 2 - erfc(-z), and -z has Re > 0.
  return 2.0 - gauss * faddeeva(Complex{y, -x});
}

}  // namespace edgediff
