#pragma once

// Flat `key = value` run configuration.
//
//   # comment
//   d1 = 50 cm
//   wavelength = 810 nm
//   integration_time = 30 s
//   pair_rate_scale = 66.7        # counts/s, unitless number
//   y2_list = 1.52 mm, 1.32 mm, 1.12 mm
//
// Lengths need one of m, cm, mm, um, nm; times need s. Rates are plain
// numbers in counts per second. Unknown and duplicate keys are errors.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgediff/counts.hpp"
#include "edgediff/diffraction.hpp"
#include "edgediff/geometry.hpp"

namespace edgediff {

/// start..stop either by fixed step (stop included when it lands on the
/// grid) or by point count (both ends included).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::optional<double> step;
  std::optional<std::size_t> count;

  std::vector<double> points() const;
  bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
  SetupGeometry geometry;
  SourceModel source;
  std::optional<GridSpec> grid;  ///< absent: default_edge_grid
  CountingConfig counting;
  Method method = Method::closed_form;
  std::string output;
  std::vector<double> y2_list;
  std::optional<GridSpec> sigma_scan;
  int trace_points = 64;

  /// grid->points(), or the default grid when no grid is configured.
  std::vector<double> edge_grid() const;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the key and line on any problem.
RunConfig parse_config(std::string_view text);

/// Canonical serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

/// "50 cm" -> 0.5. The decimal exponent is shifted before conversion, so
/// "50 cm" and "0.5 m" give the same double. Throws ConfigError.
double parse_length(std::string_view text, const std::string& key = {},
                    int line = 0);

/// "START,STOP,STEP" with unit-suffixed lengths.
GridSpec parse_grid_triple(std::string_view text, const std::string& key = {},
                           int line = 0);

/// Comma-separated unit-suffixed lengths.
std::vector<double> parse_length_list(std::string_view text,
                                      const std::string& key = {},
                                      int line = 0);

}  // namespace edgediff
