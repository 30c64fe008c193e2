#include "edgediff/geometry.hpp"

#include <cmath>
#include <string>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

SetupGeometry::SetupGeometry(double d1, double d2, double d3, double y1,
                             double y2)
    : d1_(d1), d2_(d2), d3_(d3), y1_(y1), y2_(y2) {
  require_positive(d1, "d1");
  require_positive(d2, "d2");
  require_positive(d3, "d3");
  require_finite(y1, "y1");
  require_finite(y2, "y2");
}

SourceModel::SourceModel(double wavelength, double sigma)
    : wavelength_(wavelength),
      k0_(2.0 * std::numbers::pi / wavelength),
      sigma_(sigma) {
  require_positive(wavelength, "wavelength");
  require_positive(sigma, "sigma");
}

double correlated_source_coord(double y, const SetupGeometry& g) noexcept {
  return g.y1() + (y - g.y1()) * g.d1() / g.unfolded_distance();
}

double paraxial_path_sum(double y, const SetupGeometry& g) noexcept {
  const double D = g.unfolded_distance();
  const double dy = y - g.y1();
  return D + dy * dy / (2.0 * D);
}

double paraxial_detector_distance(double y, const SetupGeometry& g) noexcept {
  const double dy = y - g.y2();
  return g.d3() + dy * dy / (2.0 * g.d3());
}

EffectiveGeometry effective_geometry(const SetupGeometry& g) noexcept {
  const double D = g.unfolded_distance();
  const double d3 = g.d3();
  return {D * d3 / (D + d3), (g.y1() * d3 + g.y2() * D) / (D + d3)};
}

}  // namespace edgediff
