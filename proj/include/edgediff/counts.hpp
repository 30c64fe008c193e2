#pragma once

// Synthetic coincidence/singles counting records.

#include <cstdint>
#include <string_view>
#include <vector>

#include "edgediff/diffraction.hpp"

namespace edgediff {

struct CountingConfig {
  /// Coincidence rate (counts/s) at normalized p12 = 1.
  double pair_rate_scale = 100.0;
  double integration_time = 30.0;  ///< seconds
  double accidental_rate = 1.0;    ///< flat coincidence floor, counts/s
  double singles_rate_1 = 2.0e4;   ///< counts/s
  /// Detector-2 singles rate (counts/s) at normalized s2 = 1.
  double singles_rate_2_scale = 2.0e4;
  std::uint64_t rng_seed = 1;

  /// Throws DomainError for negative/non-finite rates or non-positive time.
  void validate() const;

  bool operator==(const CountingConfig&) const = default;
};

struct CountsRecord {
  double edge_position = 0.0;
  std::int64_t coincidences = 0;
  std::int64_t singles1 = 0;
  std::int64_t singles2 = 0;
  double integration_time = 0.0;

  bool operator==(const CountsRecord&) const = default;
};

/// Generator description written into run metadata.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64 per (seed, grid index, channel) via splitmix64; "
    "boost::random::poisson_distribution (inversion < 10, PTRS otherwise)";

/// One Poisson count per grid point and channel:
///   coincidences ~ Poisson(T (pair_rate_scale p12_norm + accidental_rate))
///   singles1     ~ Poisson(T singles_rate_1)
///   singles2     ~ Poisson(T singles_rate_2_scale s2_norm)
/// Every (point, channel) draws from its own stream derived from rng_seed, so
/// results do not depend on evaluation order or thread count. Throws
/// DomainError if the grids differ, RangeError if a mean exceeds 2^63 - 1.
std::vector<CountsRecord> simulate_counts(const EdgePattern& pattern,
                                          const SinglesCurve& singles,
                                          const CountingConfig& cfg);

/// Poisson(mean) draw from the stream keyed by (seed, index, channel).
std::int64_t poisson_draw(double mean, std::uint64_t seed, std::uint64_t index,
                          std::uint64_t channel);

}  // namespace edgediff
