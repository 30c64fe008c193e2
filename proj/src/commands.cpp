#include "edgediff/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "edgediff/csv.hpp"
#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

void require_output(const RunConfig& cfg) {
  if (cfg.output.empty()) {
    throw ConfigError("out", 0, "no output path (set 'out' or pass --out)");
  }
}

std::string meta_text(std::string_view command, const RunConfig& cfg,
                      bool with_rng) {
  std::string text = "# edgediff " + std::string(command) + "\n";
  if (with_rng) text += "# rng: " + std::string(kRngAlgorithm) + "\n";
  return text + emit_config(cfg);
}

void write_with_meta(const std::string& path, std::string_view contents,
                     std::string_view command, const RunConfig& cfg,
                     bool with_rng, CommandResult& result) {
  csv::write_file(path, contents);
  csv::write_file(path + ".meta", meta_text(command, cfg, with_rng));
  result.files.push_back(path);
  result.files.push_back(path + ".meta");
}

EdgePattern sweep(const RunConfig& cfg, std::span<const double> grid) {
  return edge_sweep(cfg.geometry, cfg.source, grid, cfg.method);
}

SinglesCurve singles(const RunConfig& cfg, std::span<const double> grid) {
  const auto trace =
      default_singles_trace(cfg.geometry, cfg.source, cfg.trace_points);
  return traced_singles(cfg.geometry, cfg.source, grid, trace, cfg.method);
}

}  // namespace

CommandResult cmd_pattern(const RunConfig& cfg) {
  require_output(cfg);
  const auto grid = cfg.edge_grid();
  const auto pattern = sweep(cfg, grid);
  const std::vector<std::vector<double>> columns{grid, pattern.normalized()};
  CommandResult result;
  write_with_meta(cfg.output, csv::table(csv::kPatternHeader, columns),
                  "pattern", cfg, false, result);
  result.summary = "pattern: " + std::to_string(grid.size()) + " points -> " +
                   cfg.output;
  return result;
}

CommandResult cmd_singles(const RunConfig& cfg) {
  require_output(cfg);
  const auto grid = cfg.edge_grid();
  const auto curve = singles(cfg, grid);
  const std::vector<std::vector<double>> columns{
      grid, curve.s2_normalized(),
      std::vector<double>(grid.size(), curve.s1_normalized())};
  CommandResult result;
  write_with_meta(cfg.output, csv::table(csv::kSinglesHeader, columns),
                  "singles", cfg, false, result);
  result.summary = "singles: " + std::to_string(grid.size()) + " points -> " +
                   cfg.output;
  return result;
}

CommandResult cmd_classical(const RunConfig& cfg) {
  require_output(cfg);
  const auto grid = cfg.edge_grid();
  const auto eff = effective_geometry(cfg.geometry);
  const std::vector<std::vector<double>> columns{
      grid, classical_edge_pattern(eff.d_eff, eff.y_c,
                                   cfg.source.wavelength(), grid)};
  CommandResult result;
  write_with_meta(cfg.output, csv::table(csv::kClassicalHeader, columns),
                  "classical", cfg, false, result);
  result.summary = "classical: d_eff = " + csv::format_float(eff.d_eff) +
                   " m, y_c = " + csv::format_float(eff.y_c) + " m -> " +
                   cfg.output;
  return result;
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  require_output(cfg);
  const auto grid = cfg.edge_grid();
  const auto pattern = sweep(cfg, grid);
  const auto curve = singles(cfg, grid);
  const auto records = simulate_counts(pattern, curve, cfg.counting);
  CommandResult result;
  write_with_meta(cfg.output, csv::counts_table(records), "simulate", cfg, true,
                  result);
  result.summary = "simulate: " + std::to_string(records.size()) +
                   " records (seed " + std::to_string(cfg.counting.rng_seed) +
                   ") -> " + cfg.output;
  return result;
}

FitReport cmd_fit(const RunConfig& cfg, const std::string& counts_csv) {
  require_output(cfg);
  const auto records = csv::parse_counts(csv::read_file(counts_csv));
  std::vector<double> edges;
  std::vector<double> counts;
  for (const auto& r : records) {
    edges.push_back(r.edge_position);
    counts.push_back(static_cast<double>(r.coincidences));
  }

  FitReport report;
  report.sigma = cfg.source.sigma();
  if (cfg.sigma_scan) {
    const auto sigmas = cfg.sigma_scan->points();
    const auto scan = fit_sigma_scan(cfg.geometry, cfg.source.wavelength(),
                                     edges, counts, sigmas, cfg.method);
    report.sigma = scan.best_sigma;
    report.scanned_sigmas = sigmas;
    for (const auto& f : scan.fits) {
      report.scanned_rss.push_back(f.residual_sum_squares);
    }
  }
  const auto model = edge_sweep(cfg.geometry, cfg.source.with_sigma(report.sigma),
                                edges, cfg.method)
                         .normalized();
  report.fit = fit_scale_offset(model, counts);

  std::vector<double> fitted(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    fitted[i] = report.fit.scale * model[i] + report.fit.background;
  }
  const std::vector<std::vector<double>> columns{
      edges, counts, model, fitted, report.fit.per_point_residuals};

  std::ostringstream summary;
  summary << "sigma = " << csv::format_float(report.sigma) << " m\n"
          << "scale = " << csv::format_float(report.fit.scale) << "\n"
          << "scale_stderr = " << csv::format_float(report.fit.scale_stderr) << "\n"
          << "background = " << csv::format_float(report.fit.background) << "\n"
          << "background_stderr = "
          << csv::format_float(report.fit.background_stderr) << "\n"
          << "residual_sum_squares = "
          << csv::format_float(report.fit.residual_sum_squares) << "\n"
          << "degrees_of_freedom = " << report.fit.degrees_of_freedom << "\n";
  for (std::size_t i = 0; i < report.scanned_sigmas.size(); ++i) {
    summary << "scan " << csv::format_float(report.scanned_sigmas[i])
            << " m rss = " << csv::format_float(report.scanned_rss[i]) << "\n";
  }

  auto& result = report.result;
  write_with_meta(cfg.output, csv::table(csv::kFitHeader, columns), "fit", cfg,
                  false, result);
  const std::string summary_path = cfg.output + ".summary";
  csv::write_file(summary_path, summary.str());
  result.files.push_back(summary_path);
  result.summary = summary.str();
  return report;
}

std::string detector_output_path(const std::string& output, double y2) {
  const std::filesystem::path path(output);
  char tag[64];
  std::snprintf(tag, sizeof tag, "_y2_%.3fmm", y2 * 1e3);
  auto name = path.stem().string() + tag + path.extension().string();
  return (path.parent_path() / name).string();
}

CommandResult cmd_sweep_detector(const RunConfig& cfg,
                                 std::span<const double> y2_list) {
  require_output(cfg);
  std::vector<double> positions(y2_list.begin(), y2_list.end());
  if (positions.empty()) positions = cfg.y2_list;
  if (positions.empty()) positions = {1.52e-3, 1.32e-3, 1.12e-3};

  CommandResult result;
  for (double y2 : positions) {
    RunConfig run = cfg;
    run.geometry = cfg.geometry.with_y2(y2);
    run.output = detector_output_path(cfg.output, y2);
    const auto one = cmd_pattern(run);
    result.files.insert(result.files.end(), one.files.begin(), one.files.end());
    result.summary += one.summary + "\n";
  }
  return result;
}

}  // namespace edgediff
