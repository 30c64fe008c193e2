#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "edgediff/analysis.hpp"
#include "edgediff/commands.hpp"
#include "edgediff/csv.hpp"
#include "edgediff/errors.hpp"
#include "test_support.hpp"

using namespace edgediff;
using namespace edgediff::testing;

namespace {

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(EDGEDIFF_TEST_TMPDIR);
  return std::string(EDGEDIFF_TEST_TMPDIR) + "/" + name;
}

RunConfig reference_config(const std::string& out) {
  auto cfg = parse_config(R"(
d1 = 50 cm
d2 = 28 cm
d3 = 22 cm
y1 = 0.15 mm
y2 = 1.52 mm
wavelength = 810 nm
sigma = 0.85 mm
grid_start = -1 mm
grid_stop = 4 mm
grid_count = 150
)");
  cfg.output = out;
  return cfg;
}

std::vector<std::vector<double>> read_columns(const std::string& path,
                                              std::string_view header) {
  std::istringstream in(csv::read_file(path));
  std::string line;
  std::getline(in, line);
  REQUIRE(line == header);
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(row, cell, ',')) {
      if (cols.size() <= c) cols.emplace_back();
      cols[c++].push_back(std::stod(cell));
    }
  }
  return cols;
}

}  // namespace

TEST_CASE("csv formatting") {
  CHECK(csv::format_float(1.0) == "1.00000000e+00");
  CHECK(csv::format_float(-2.5e-4) == "-2.50000000e-04");
  const std::vector<std::vector<double>> cols{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(csv::table("a,b", cols) ==
        "a,b\n1.00000000e+00,3.00000000e+00\n2.00000000e+00,4.00000000e+00\n");
  const std::vector<CountsRecord> records{{1e-3, 5, 6, 7, 30.0}, {2e-3, 0, 1, 2, 30.0}};
  const auto text = csv::counts_table(records);
  CHECK(text.starts_with(csv::kCountsHeader));
  const auto parsed = csv::parse_counts(text);
  CHECK(parsed == records);
  CHECK_THROWS_AS(csv::parse_counts("wrong,header\n"), IoError);
  CHECK_THROWS_AS(csv::parse_counts(std::string(csv::kCountsHeader) + "\n1,2,3\n"),
                  IoError);
  CHECK_THROWS_AS(csv::read_file(tmp_path("does/not/exist.csv")), IoError);
}

TEST_CASE("cmd_pattern writes fringes and metadata") {
  const auto cfg = reference_config(tmp_path("pattern.csv"));
  const auto result = cmd_pattern(cfg);
  CHECK(result.files.size() == 2);
  const auto cols = read_columns(cfg.output, csv::kPatternHeader);
  REQUIRE(cols.size() == 2);
  CHECK(cols[0].size() == 150);
  CHECK(strict_local_maxima(cols[1]).size() >= 3);
  const auto meta = csv::read_file(cfg.output + ".meta");
  CHECK(meta.find("# edgediff pattern") == 0);
  CHECK(meta.find("grid_count = 150") != std::string::npos);

  RunConfig no_out = cfg;
  no_out.output.clear();
  CHECK_THROWS_AS(cmd_pattern(no_out), ConfigError);
}

TEST_CASE("cmd_classical hits a quarter at the shadow edge") {
  auto cfg = reference_config(tmp_path("classical.csv"));
  const auto eff = effective_geometry(cfg.geometry);
  cfg.grid = GridSpec{eff.y_c, eff.y_c + 4e-3, std::nullopt, 101};
  (void)cmd_classical(cfg);
  const auto cols = read_columns(cfg.output, csv::kClassicalHeader);
  CHECK(cols[1].front() == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("cmd_singles writes flat s1") {
  auto cfg = reference_config(tmp_path("singles.csv"));
  cfg.grid = GridSpec{-1e-3, 4e-3, std::nullopt, 40};
  (void)cmd_singles(cfg);
  const auto cols = read_columns(cfg.output, csv::kSinglesHeader);
  REQUIRE(cols.size() == 3);
  for (double v : cols[2]) CHECK(v == doctest::Approx(1.0));
  CHECK(cols[1].front() < 1e-3);
}

TEST_CASE("simulate then fit round trip") {
  auto cfg = reference_config(tmp_path("counts.csv"));
  cfg.counting.pair_rate_scale = 2000.0 / 30.0;
  cfg.counting.accidental_rate = 50.0 / 30.0;
  cfg.counting.rng_seed = 12;
  (void)cmd_simulate(cfg);
  const auto first = csv::read_file(cfg.output);
  (void)cmd_simulate(cfg);
  CHECK(csv::read_file(cfg.output) == first);
  CHECK(csv::read_file(cfg.output + ".meta").find("# rng: ") != std::string::npos);

  auto fit_cfg = cfg;
  fit_cfg.output = tmp_path("fit.csv");
  const auto report = cmd_fit(fit_cfg, cfg.output);
  CHECK(std::abs(report.fit.scale - 2000.0) <= 3.0 * report.fit.scale_stderr);
  CHECK(report.sigma == cfg.source.sigma());
  CHECK(std::filesystem::exists(fit_cfg.output + ".summary"));
  const auto cols = read_columns(fit_cfg.output, csv::kFitHeader);
  CHECK(cols.size() == 5);

  fit_cfg.sigma_scan = GridSpec{0.65e-3, 1.05e-3, 0.05e-3, std::nullopt};
  const auto scanned = cmd_fit(fit_cfg, cfg.output);
  CHECK(scanned.scanned_sigmas.size() == 9);
  CHECK(scanned.sigma == doctest::Approx(0.85e-3).epsilon(1e-9));

  cfg.counting.rng_seed = 13;
  (void)cmd_simulate(cfg);
  CHECK(csv::read_file(cfg.output) != first);
}

TEST_CASE("cmd_sweep_detector writes one file per position") {
  auto cfg = reference_config(tmp_path("sweep.csv"));
  const auto result = cmd_sweep_detector(cfg);
  CHECK(result.files.size() == 6);
  CHECK(detector_output_path(tmp_path("sweep.csv"), 1.52e-3) ==
        tmp_path("sweep_y2_1.520mm.csv"));
  CHECK(std::filesystem::exists(tmp_path("sweep_y2_1.120mm.csv")));
  const std::vector<double> custom{1.0e-3};
  CHECK(cmd_sweep_detector(cfg, custom).files.size() == 2);
}
