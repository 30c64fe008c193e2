#include "edgediff/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = s.find(sep, begin);
    parts.push_back(trim(s.substr(begin, pos - begin)));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

struct Unit {
  std::string_view suffix;
  int power_of_ten;
};

constexpr std::array<Unit, 5> kLengthUnits = {
    {{"m", 0}, {"cm", -2}, {"mm", -3}, {"um", -6}, {"nm", -9}}};
constexpr std::array<Unit, 1> kTimeUnits = {{{"s", 0}}};

// Splits "1.5e-3 mm" into its numeric token and trimmed suffix.
std::pair<std::string_view, std::string_view> split_number(
    std::string_view text, const std::string& key, int line) {
  text = trim(text);
  double ignored = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), ignored);
  if (ec != std::errc{} || end == text.data()) {
    throw ConfigError(key, line, "malformed number '" + std::string(text) + "'");
  }
  const auto used = static_cast<std::size_t>(end - text.data());
  return {text.substr(0, used), trim(text.substr(used))};
}

// Converts `number` * 10^shift by editing the decimal exponent, so the
// result is the correctly rounded value of the exact decimal.
double scaled_decimal(std::string_view number, int shift,
                      const std::string& key, int line) {
  std::string mantissa(number);
  long exponent = 0;
  if (const auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    exponent = std::strtol(mantissa.c_str() + e + 1, nullptr, 10);
    mantissa.resize(e);
  }
  const std::string shifted = mantissa + "e" + std::to_string(exponent + shift);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(shifted.data(), shifted.data() + shifted.size(), value);
  if (ec != std::errc{} || end != shifted.data() + shifted.size() ||
      !std::isfinite(value)) {
    throw ConfigError(key, line, "number out of range '" + std::string(number) + "'");
  }
  return value;
}

template <std::size_t N>
double parse_quantity(std::string_view text, const std::array<Unit, N>& units,
                      const char* kind, const std::string& key, int line) {
  const auto [number, suffix] = split_number(text, key, line);
  if (suffix.empty()) {
    throw ConfigError(key, line, std::string("missing ") + kind + " unit");
  }
  for (const auto& unit : units) {
    if (suffix == unit.suffix) {
      return scaled_decimal(number, unit.power_of_ten, key, line);
    }
  }
  throw ConfigError(key, line, "bad " + std::string(kind) + " unit '" +
                                   std::string(suffix) + "'");
}

double parse_plain(std::string_view text, const std::string& key, int line) {
  const auto [number, suffix] = split_number(text, key, line);
  if (!suffix.empty()) {
    throw ConfigError(key, line, "unexpected suffix '" + std::string(suffix) + "'");
  }
  return scaled_decimal(number, 0, key, line);
}

template <typename Int>
Int parse_integer(std::string_view text, const std::string& key, int line) {
  text = trim(text);
  Int value{};
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(key, line, "malformed integer '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Kind { length, time, plain, integer, count, text, method, length_list };

const std::map<std::string, Kind, std::less<>>& known_keys() {
  static const std::map<std::string, Kind, std::less<>> keys = {
      {"d1", Kind::length},
      {"d2", Kind::length},
      {"d3", Kind::length},
      {"y1", Kind::length},
      {"y2", Kind::length},
      {"wavelength", Kind::length},
      {"sigma", Kind::length},
      {"grid_start", Kind::length},
      {"grid_stop", Kind::length},
      {"grid_step", Kind::length},
      {"grid_count", Kind::count},
      {"pair_rate_scale", Kind::plain},
      {"integration_time", Kind::time},
      {"accidental_rate", Kind::plain},
      {"singles_rate_1", Kind::plain},
      {"singles_rate_2_scale", Kind::plain},
      {"seed", Kind::integer},
      {"method", Kind::method},
      {"out", Kind::text},
      {"y2_list", Kind::length_list},
      {"sigma_scan_start", Kind::length},
      {"sigma_scan_stop", Kind::length},
      {"sigma_scan_step", Kind::length},
      {"trace_points", Kind::count},
  };
  return keys;
}

struct Entry {
  std::string value;
  int line;
};

}  // namespace

std::vector<double> GridSpec::points() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    throw DomainError("grid needs finite start < stop");
  }
  if (count) {
    if (*count < 2) throw DomainError("grid needs at least 2 points");
    return linspace(start, stop, *count);
  }
  if (!step || !(*step > 0.0)) {
    throw DomainError("grid needs a positive step or a point count");
  }
  const double span = (stop - start) / *step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (n < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = start + *step * static_cast<double>(i);
  }
  return out;
}

std::vector<double> RunConfig::edge_grid() const {
  return grid ? grid->points() : default_edge_grid(geometry, source);
}

double parse_length(std::string_view text, const std::string& key, int line) {
  return parse_quantity(text, kLengthUnits, "length", key, line);
}

std::vector<double> parse_length_list(std::string_view text,
                                      const std::string& key, int line) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_length(part, key, line));
  return out;
}

GridSpec parse_grid_triple(std::string_view text, const std::string& key,
                           int line) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw ConfigError(key, line, "expected START,STOP,STEP");
  }
  GridSpec grid{parse_length(parts[0], key, line),
                parse_length(parts[1], key, line),
                parse_length(parts[2], key, line), std::nullopt};
  try {
    (void)grid.points();
  } catch (const DomainError& e) {
    throw ConfigError(key, line, e.what());
  }
  return grid;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  int line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto end = text.find('\n', begin);
    std::string_view raw = text.substr(begin, end - begin);
    ++line_no;
    begin = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", line_no, "expected 'key = value'");
    }
    const std::string key(trim(raw.substr(0, eq)));
    const std::string value(trim(raw.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", line_no, "empty key");
    if (!known_keys().contains(key)) {
      throw ConfigError(key, line_no, "unknown key");
    }
    if (value.empty()) throw ConfigError(key, line_no, "empty value");
    if (const auto it = entries.find(key); it != entries.end()) {
      throw ConfigError(key, line_no,
                        "duplicate key (first set on line " +
                            std::to_string(it->second.line) + ")");
    }
    entries.emplace(key, Entry{value, line_no});
  }

  auto line_of = [&](std::string_view key) {
    const auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  };
  auto length = [&](std::string_view key) -> std::optional<double> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return parse_length(it->second.value, it->first, it->second.line);
  };
  auto required_length = [&](std::string_view key) {
    auto v = length(key);
    if (!v) throw ConfigError(std::string(key), 0, "missing required key");
    return *v;
  };
  auto plain = [&](std::string_view key, double fallback) {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    return parse_plain(it->second.value, it->first, it->second.line);
  };

  const double d1 = required_length("d1");
  const double d2 = required_length("d2");
  const double d3 = required_length("d3");
  const double y1 = required_length("y1");
  const double y2 = required_length("y2");
  const double wavelength = required_length("wavelength");
  const double sigma = required_length("sigma");

  // Report invariant violations against the first offending key.
  auto geometry = [&] {
    for (const char* key : {"d1", "d2", "d3"}) {
      if (!(*length(key) > 0.0)) {
        throw ConfigError(key, line_of(key), "must be positive");
      }
    }
    return SetupGeometry(d1, d2, d3, y1, y2);
  }();
  auto source = [&] {
    for (const char* key : {"wavelength", "sigma"}) {
      if (!(*length(key) > 0.0)) {
        throw ConfigError(key, line_of(key), "must be positive");
      }
    }
    return SourceModel(wavelength, sigma);
  }();

  RunConfig cfg{.geometry = geometry,
                .source = source,
                .grid = std::nullopt,
                .counting = {},
                .method = Method::closed_form,
                .output = {},
                .y2_list = {},
                .sigma_scan = std::nullopt,
                .trace_points = 64};

  if (entries.contains("grid_start") || entries.contains("grid_stop") ||
      entries.contains("grid_step") || entries.contains("grid_count")) {
    for (const char* key : {"grid_start", "grid_stop"}) {
      if (!entries.contains(key)) {
        throw ConfigError(key, 0, "missing (grid keys must be given together)");
      }
    }
    GridSpec grid{*length("grid_start"), *length("grid_stop"),
                  length("grid_step"), std::nullopt};
    if (const auto it = entries.find("grid_count"); it != entries.end()) {
      if (grid.step) {
        throw ConfigError("grid_count", it->second.line,
                          "give grid_step or grid_count, not both");
      }
      grid.count = parse_integer<std::size_t>(it->second.value, it->first,
                                              it->second.line);
    }
    if (!grid.step && !grid.count) {
      throw ConfigError("grid_step", 0, "missing (or set grid_count)");
    }
    try {
      (void)grid.points();
    } catch (const DomainError& e) {
      throw ConfigError("grid_start", line_of("grid_start"), e.what());
    }
    cfg.grid = grid;
  }

  cfg.counting.pair_rate_scale = plain("pair_rate_scale", cfg.counting.pair_rate_scale);
  cfg.counting.accidental_rate = plain("accidental_rate", cfg.counting.accidental_rate);
  cfg.counting.singles_rate_1 = plain("singles_rate_1", cfg.counting.singles_rate_1);
  cfg.counting.singles_rate_2_scale =
      plain("singles_rate_2_scale", cfg.counting.singles_rate_2_scale);
  if (const auto it = entries.find("integration_time"); it != entries.end()) {
    cfg.counting.integration_time = parse_quantity(
        it->second.value, kTimeUnits, "time", it->first, it->second.line);
  }
  if (const auto it = entries.find("seed"); it != entries.end()) {
    cfg.counting.rng_seed = parse_integer<std::uint64_t>(
        it->second.value, it->first, it->second.line);
  }
  try {
    cfg.counting.validate();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(' '));
    throw ConfigError(key, line_of(key), msg);
  }

  if (const auto it = entries.find("method"); it != entries.end()) {
    try {
      cfg.method = method_from_string(it->second.value);
    } catch (const DomainError& e) {
      throw ConfigError(it->first, it->second.line, e.what());
    }
  }
  if (const auto it = entries.find("out"); it != entries.end()) {
    cfg.output = it->second.value;
  }
  if (const auto it = entries.find("y2_list"); it != entries.end()) {
    cfg.y2_list = parse_length_list(it->second.value, it->first, it->second.line);
  }
  if (entries.contains("sigma_scan_start") || entries.contains("sigma_scan_stop") ||
      entries.contains("sigma_scan_step")) {
    for (const char* key : {"sigma_scan_start", "sigma_scan_stop", "sigma_scan_step"}) {
      if (!entries.contains(key)) {
        throw ConfigError(key, 0, "missing (sigma_scan keys must be given together)");
      }
    }
    GridSpec scan{*length("sigma_scan_start"), *length("sigma_scan_stop"),
                  length("sigma_scan_step"), std::nullopt};
    try {
      for (double s : scan.points()) {
        if (!(s > 0.0)) throw DomainError("sigma scan values must be positive");
      }
    } catch (const DomainError& e) {
      throw ConfigError("sigma_scan_start", line_of("sigma_scan_start"), e.what());
    }
    cfg.sigma_scan = scan;
  }
  if (const auto it = entries.find("trace_points"); it != entries.end()) {
    cfg.trace_points = parse_integer<int>(it->second.value, it->first, it->second.line);
    if (cfg.trace_points < 32) {
      throw ConfigError(it->first, it->second.line, "must be at least 32");
    }
  }
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto length = [&](const char* key, double v) {
    out << key << " = " << format_number(v) << " m\n";
  };
  const auto& g = cfg.geometry;
  length("d1", g.d1());
  length("d2", g.d2());
  length("d3", g.d3());
  length("y1", g.y1());
  length("y2", g.y2());
  length("wavelength", cfg.source.wavelength());
  length("sigma", cfg.source.sigma());
  if (cfg.grid) {
    length("grid_start", cfg.grid->start);
    length("grid_stop", cfg.grid->stop);
    if (cfg.grid->step) length("grid_step", *cfg.grid->step);
    if (cfg.grid->count) out << "grid_count = " << *cfg.grid->count << "\n";
  }
  const auto& c = cfg.counting;
  out << "pair_rate_scale = " << format_number(c.pair_rate_scale) << "\n";
  out << "integration_time = " << format_number(c.integration_time) << " s\n";
  out << "accidental_rate = " << format_number(c.accidental_rate) << "\n";
  out << "singles_rate_1 = " << format_number(c.singles_rate_1) << "\n";
  out << "singles_rate_2_scale = " << format_number(c.singles_rate_2_scale) << "\n";
  out << "seed = " << c.rng_seed << "\n";
  out << "method = " << to_string(cfg.method) << "\n";
  if (!cfg.output.empty()) out << "out = " << cfg.output << "\n";
  if (!cfg.y2_list.empty()) {
    out << "y2_list = ";
    for (std::size_t i = 0; i < cfg.y2_list.size(); ++i) {
      out << (i ? ", " : "") << format_number(cfg.y2_list[i]) << " m";
    }
    out << "\n";
  }
  if (cfg.sigma_scan) {
    length("sigma_scan_start", cfg.sigma_scan->start);
    length("sigma_scan_stop", cfg.sigma_scan->stop);
    length("sigma_scan_step", *cfg.sigma_scan->step);
  }
  out << "trace_points = " << cfg.trace_points << "\n";
  return out.str();
}

}  // namespace edgediff
