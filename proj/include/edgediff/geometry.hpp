#pragma once

// Experimental geometry of the edge-diffraction setup and the coordinate and
// path-length maps used by the coincidence integral. All lengths are meters.
//
//   source plane (y')  --d1-->  [D1 at y1, reached via the source]
//   source plane (y')  --d2-->  edge plane (y), edge at dy  --d3-->  D2 at y2
//
// The two-photon path D1 -> source -> edge plane unfolds to a straight path
// of length D = d1 + d2.

#include <numbers>

namespace edgediff {

class SetupGeometry {
 public:
  /// Throws DomainError unless d1, d2, d3 are positive and all values finite.
  SetupGeometry(double d1, double d2, double d3, double y1, double y2);

  double d1() const noexcept { return d1_; }
  double d2() const noexcept { return d2_; }
  double d3() const noexcept { return d3_; }
  double y1() const noexcept { return y1_; }
  double y2() const noexcept { return y2_; }

  /// D = d1 + d2, the unfolded detector-1-to-edge distance.
  double unfolded_distance() const noexcept { return d1_ + d2_; }

  SetupGeometry with_y1(double y1) const { return {d1_, d2_, d3_, y1, y2_}; }
  SetupGeometry with_y2(double y2) const { return {d1_, d2_, d3_, y1_, y2}; }

  bool operator==(const SetupGeometry&) const = default;

 private:
  double d1_, d2_, d3_, y1_, y2_;
};

class SourceModel {
 public:
  /// Pair-production amplitude exp(-y'^2 / sigma^2) at the given wavelength.
  /// Throws DomainError unless both are positive and finite.
  SourceModel(double wavelength, double sigma);

  double wavelength() const noexcept { return wavelength_; }
  double k0() const noexcept { return k0_; }
  double sigma() const noexcept { return sigma_; }

  SourceModel with_sigma(double sigma) const { return {wavelength_, sigma}; }

  bool operator==(const SourceModel&) const = default;

 private:
  double wavelength_, k0_, sigma_;
};

struct EffectiveGeometry {
  double d_eff;  ///< D*d3/(D+d3)
  double y_c;    ///< vertex of the combined quadratic phase
};

/// Source point y' most likely paired with a photon-2 crossing at y.
double correlated_source_coord(double y, const SetupGeometry& g) noexcept;

/// Paraxial D1-to-y distance D*(1 + (y-y1)^2 / (2 D^2)).
double paraxial_path_sum(double y, const SetupGeometry& g) noexcept;

/// Paraxial y-to-D2 distance d3*(1 + (y-y2)^2 / (2 d3^2)).
double paraxial_detector_distance(double y, const SetupGeometry& g) noexcept;

EffectiveGeometry effective_geometry(const SetupGeometry& g) noexcept;

}  // namespace edgediff
