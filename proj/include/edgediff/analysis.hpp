#pragma once

// Shape measures for sampled edge patterns.

#include <cstddef>
#include <span>
#include <vector>

namespace edgediff {

/// Indices i with v[i-1] < v[i] > v[i+1].
std::vector<std::size_t> strict_local_maxima(std::span<const double> v);
/// Indices i with v[i-1] > v[i] < v[i+1].
std::vector<std::size_t> strict_local_minima(std::span<const double> v);

/// (max - min) / (max + min) over v. Zero for an empty span.
double visibility(std::span<const double> v);

/// Michelson visibility of the first fringe: v between the first and second
/// strict local maxima. Throws DomainError if fewer than two maxima exist.
double first_fringe_visibility(std::span<const double> v);

/// Largest visibility over every window of `window` consecutive samples that
/// starts at or after index `from`.
double max_window_visibility(std::span<const double> v, std::size_t from,
                             std::size_t window);

/// Shift of `moved` relative to `reference`, both sampled on the same uniform
/// grid with spacing `step`. Uses the argmax of the cross-correlation of the
/// two slopes (central differences), refined by a parabola through the peak.
/// Positive means `moved` lies to the right.
double correlation_lag(std::span<const double> reference,
                       std::span<const double> moved, double step);

}  // namespace edgediff
