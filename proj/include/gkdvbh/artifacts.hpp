#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkdvbh/analysis.hpp"
#include "gkdvbh/config.hpp"

namespace gkdvbh {

/// run.csv body: metadata comment line, the exact header
/// t,l2,h1_semi,linf,u_at_1,bc_res0,bc_res1,bc_res2,newton_iters and one
/// row per sample in 17-significant-digit scientific notation.
std::string render_run_csv(const RunRecord& record, const std::string& hash);

/// run_meta body: metadata comment line plus the canonical config echo, so
/// the file is itself a loadable config.
std::string render_run_meta(const SimConfig& config);

/// Minimal SVG with linear and log10 l2(t) panels.
std::string render_run_svg(const RunRecord& record, const std::string& hash);

struct RunOutput {
  RunRecord record;
  std::string csv_path;
  std::string meta_path;
  std::optional<std::string> svg_path;
};

/// Simulates `config` and writes run.csv + run_meta.txt (+ plot.svg when
/// requested) under config.output_dir. On solver failure the partial CSV is
/// flushed with a trailing `# FAILED ...` sentinel line and the error is
/// rethrown.
RunOutput run_to_dir(const SimConfig& config, bool write_svg);

struct CompareEntry {
  std::string law;
  double slope = 0.0;
  double r_squared = 0.0;
  double theoretical_rate = 0.0;
};

struct CompareResult {
  std::vector<CompareEntry> entries;
  bool ordering_checked = false;  ///< curvature was among the laws
  bool ordering_holds = false;    ///< curvature decays strictly slower
  double ordering_gap = 0.0;      ///< min slope gap against curvature
  std::string csv_path;
  std::string table_path;
};

/// Runs every config (they must share params, δ, grid, dt and u0), fits the
/// decay slopes on the common [0.2·T, 0.9·T] window, writes compare.csv and
/// slopes.txt to out_dir, and evaluates the curvature-is-slower ordering
/// whenever a curvature run is present.
CompareResult compare_to_dir(const std::vector<SimConfig>& configs,
                             const std::string& out_dir);

}  // namespace gkdvbh
