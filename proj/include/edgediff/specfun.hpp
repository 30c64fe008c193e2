#pragma once

// Complex error functions, Fresnel integrals and the closed-form cumulative
// Gaussian-chirp integral.
//
// Branch cuts: every complex square root is the principal branch
// (std::sqrt), so sqrt(a) has Re > 0 whenever Re(a) > 0.

#include <complex>

namespace edgediff {

using Complex = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Upper half plane: Poppe & Wijers (ACM TOMS 680) hybrid. Inside the
/// ellipse (x/6.3)^2 + (y/4.4)^2 < 0.085264 a power series is used; outside
/// the unit ellipse the Laplace continued fraction; in between a Taylor
/// expansion whose derivatives come from the continued fraction. Term counts
/// are raised above the published minimums for a 1e-13 relative target.
/// Lower half plane: w(z) = 2 exp(-z^2) - w(-z). Throws RangeError when
/// exp(-z^2) overflows there, DomainError for non-finite z.
Complex faddeeva(Complex z);

/// erfc(z) = exp(-z^2) w(iz), evaluated through the half plane that keeps
/// w's argument in Im >= 0 and using erfc(-z) = 2 - erfc(z) otherwise.
Complex erfc_complex(Complex z);

struct FresnelCS {
  double c;
  double s;
};

/// C(u) = int_0^u cos(pi t^2/2) dt, S(u) = int_0^u sin(pi t^2/2) dt.
/// Power series for |u| < 1.5, complex continued fraction (modified Lentz)
/// beyond. Independent of faddeeva().
FresnelCS fresnel_cs(double u);

/// int_{-inf}^{upper} exp(-a y^2 + b y + c) dy for Re(a) > 0.
///
/// With m = b/(2a) the value is 1/2 sqrt(pi/a) exp(c + b^2/(4a))
/// erfc(sqrt(a) (m - upper)). It is evaluated as a product with the integrand
/// at the endpoint, exp(-a u^2 + b u + c) * w(i sqrt(a)(m - u)), so the large
/// exponentials cancel analytically rather than in floating point.
/// Throws DomainError when Re(a) <= 0 and RangeError on overflow.
Complex gaussian_chirp_cumulative(Complex a, Complex b, Complex c,
                                  double upper);

/// The upper = +inf limit: sqrt(pi/a) exp(c + b^2/(4a)).
Complex gaussian_chirp_full(Complex a, Complex b, Complex c);

}  // namespace edgediff
