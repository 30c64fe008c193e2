#pragma once

// Command implementations behind the edgediff CLI. Each writes its CSV to
// `cfg.output` plus a `<output>.meta` sidecar holding the resolved config,
// and returns the paths written.

#include <span>
#include <string>
#include <vector>

#include "edgediff/calibration.hpp"
#include "edgediff/config.hpp"

namespace edgediff {

struct CommandResult {
  std::vector<std::string> files;
  std::string summary;  ///< human-readable, printed by the CLI
};

CommandResult cmd_pattern(const RunConfig& cfg);
CommandResult cmd_singles(const RunConfig& cfg);
/// Classical knife-edge curve using effective_geometry(cfg.geometry).
CommandResult cmd_classical(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);

struct FitReport {
  CommandResult result;
  FitResult fit;
  double sigma = 0.0;  ///< sigma used for the reported fit
  std::vector<double> scanned_sigmas;
  std::vector<double> scanned_rss;
};

/// Fits the model to a counts CSV (the cmd_simulate schema). With
/// cfg.sigma_scan set, sigma is scanned first and the best one is reported.
/// Writes the per-point CSV and `<output>.summary`.
FitReport cmd_fit(const RunConfig& cfg, const std::string& counts_csv);

/// One pattern CSV per detector-2 position, named
/// `<stem>_y2_<value>mm<ext>`. Uses `y2_list` when non-empty, otherwise
/// cfg.y2_list, otherwise 1.52, 1.32 and 1.12 mm.
CommandResult cmd_sweep_detector(const RunConfig& cfg,
                                 std::span<const double> y2_list = {});

/// Output path for one detector position in cmd_sweep_detector.
std::string detector_output_path(const std::string& output, double y2);

}  // namespace edgediff
