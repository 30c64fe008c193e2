// edgediff: coincidence edge-diffraction patterns, singles, synthetic counts
// and model fits from a flat key = value config.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "edgediff/commands.hpp"
#include "edgediff/csv.hpp"
#include "edgediff/errors.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  std::string method;
  std::optional<std::uint64_t> seed;
  std::string grid;
};

edgediff::RunConfig resolve(const Overrides& o) {
  auto cfg = edgediff::parse_config(edgediff::csv::read_file(o.config_path));
  if (!o.out.empty()) cfg.output = o.out;
  if (!o.method.empty()) cfg.method = edgediff::method_from_string(o.method);
  if (o.seed) cfg.counting.rng_seed = *o.seed;
  if (!o.grid.empty()) cfg.grid = edgediff::parse_grid_triple(o.grid, "--grid");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon edge diffraction: patterns, singles, counts, fits"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "Config file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Output CSV path (overrides 'out')");
  app.add_option("--method", o.method, "Amplitude evaluation")
      ->check(CLI::IsMember({"closed", "quad"}));
  app.add_option("--seed", o.seed, "RNG seed (overrides 'seed')");
  app.add_option("--grid", o.grid,
                 "Edge grid START,STOP,STEP with units, e.g. -1mm,4mm,0.02mm");

  auto* pattern = app.add_subcommand("pattern", "Normalized coincidence pattern");
  auto* singles = app.add_subcommand("singles", "Traced detector-2 singles");
  auto* classical = app.add_subcommand("classical", "Classical knife-edge curve");
  auto* simulate = app.add_subcommand("simulate", "Poisson counting records");

  auto* fit = app.add_subcommand("fit", "Fit scale/background to counts");
  std::string counts_path;
  std::string sigma_scan;
  fit->add_option("--counts", counts_path, "Counts CSV from 'simulate'")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--sigma-scan", sigma_scan,
                  "Scan sigma START,STOP,STEP with units, e.g. 0.65mm,1.05mm,0.05mm");

  auto* sweep = app.add_subcommand("sweep-detector",
                                   "One pattern per detector-2 position");
  std::string y2_list;
  sweep->add_option("--y2", y2_list, "Comma-separated y2 values with units");

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = resolve(o);
    edgediff::CommandResult result;
    if (*pattern) {
      result = edgediff::cmd_pattern(cfg);
    } else if (*singles) {
      result = edgediff::cmd_singles(cfg);
    } else if (*classical) {
      result = edgediff::cmd_classical(cfg);
    } else if (*simulate) {
      result = edgediff::cmd_simulate(cfg);
    } else if (*fit) {
      if (!sigma_scan.empty()) {
        cfg.sigma_scan = edgediff::parse_grid_triple(sigma_scan, "--sigma-scan");
      }
      result = edgediff::cmd_fit(cfg, counts_path).result;
    } else if (*sweep) {
      std::vector<double> positions;
      if (!y2_list.empty()) positions = edgediff::parse_length_list(y2_list, "--y2");
      result = edgediff::cmd_sweep_detector(cfg, positions);
    }
    std::cout << result.summary;
    if (!result.summary.empty() && result.summary.back() != '\n') std::cout << '\n';
  } catch (const std::exception& e) {
    std::cerr << "edgediff: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
