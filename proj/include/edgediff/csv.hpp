#pragma once

// CSV emission and the counts reader. Header row, comma separated, LF line
// endings, floats as %.8e (nine significant digits), integers in decimal.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgediff/counts.hpp"

namespace edgediff::csv {

inline constexpr std::string_view kPatternHeader = "edge_position_m,p12_normalized";
inline constexpr std::string_view kSinglesHeader =
    "edge_position_m,s2_normalized,s1_normalized";
inline constexpr std::string_view kClassicalHeader =
    "edge_position_m,intensity_normalized";
inline constexpr std::string_view kCountsHeader =
    "edge_position_m,coincidences,singles1,singles2,integration_time_s";
inline constexpr std::string_view kFitHeader =
    "edge_position_m,coincidences,model_p12_normalized,fitted_coincidences,"
    "residual";

std::string format_float(double v);

/// Header plus one row per index; every column must have the same length.
std::string table(std::string_view header,
                  std::span<const std::vector<double>> columns);

std::string counts_table(std::span<const CountsRecord> records);

/// Parses text produced by counts_table. Throws IoError on a header or row
/// mismatch, naming the line.
std::vector<CountsRecord> parse_counts(std::string_view text);

std::string read_file(const std::string& path);
/// Writes bytes verbatim (binary mode). Throws IoError.
void write_file(const std::string& path, std::string_view contents);

}  // namespace edgediff::csv
