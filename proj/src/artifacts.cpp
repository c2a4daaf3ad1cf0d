#include "gkdvbh/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gkdvbh/errors.hpp"
#include "gkdvbh/timestepper.hpp"
#include "gkdvbh/version.hpp"

namespace gkdvbh {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string meta_line(const std::string& hash) {
  return std::string("# gkdvbh v") + GKDVBH_VERSION_STRING +
         " config_hash=" + hash + "\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write '" + path + "'");
  out << body;
  if (!out) fail(ErrorCode::io, "write failed for '" + path + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::io, "cannot create directory '" + dir + "': " + ec.message());
  }
}

std::string csv_rows(const RunRecord& record) {
  std::ostringstream out;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out << sci(record.times[k]) << ',' << sci(record.l2[k]) << ','
        << sci(record.h1_semi[k]) << ',' << sci(record.linf[k]) << ','
        << sci(record.u_at_1[k]) << ',' << sci(record.bc_residuals[k][0])
        << ',' << sci(record.bc_residuals[k][1]) << ','
        << sci(record.bc_residuals[k][2]) << ',' << record.newton_iters[k]
        << '\n';
  }
  return out.str();
}

constexpr const char* kCsvHeader =
    "t,l2,h1_semi,linf,u_at_1,bc_res0,bc_res1,bc_res2,newton_iters\n";

}  // namespace

std::string render_run_csv(const RunRecord& record, const std::string& hash) {
  return meta_line(hash) + kCsvHeader + csv_rows(record);
}

std::string render_run_meta(const SimConfig& config) {
  return meta_line(config_hash(config)) + config_echo(config);
}

namespace {

struct SvgPanel {
  double x0, y0, w, h;  // viewport
  double tmin, tmax, vmin, vmax;

  double px(double t) const { return x0 + (t - tmin) / (tmax - tmin) * w; }
  double py(double v) const {
    return y0 + h - (v - vmin) / (vmax - vmin) * h;
  }
};

void append_panel(std::ostringstream& svg, const SvgPanel& p,
                  const std::vector<double>& t, const std::vector<double>& v,
                  const std::string& label) {
  svg << "<rect x='" << p.x0 << "' y='" << p.y0 << "' width='" << p.w
      << "' height='" << p.h << "' fill='none' stroke='black'/>\n";
  svg << "<text x='" << p.x0 + 4 << "' y='" << p.y0 + 14
      << "' font-size='12'>" << label << "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double tv = p.tmin + (p.tmax - p.tmin) * tick / 4.0;
    svg << "<text x='" << p.px(tv) - 8 << "' y='" << p.y0 + p.h + 14
        << "' font-size='10'>" << tv << "</text>\n";
    const double vv = p.vmin + (p.vmax - p.vmin) * tick / 4.0;
    char vbuf[24];
    std::snprintf(vbuf, sizeof vbuf, "%.3g", vv);
    svg << "<text x='" << p.x0 - 44 << "' y='" << p.py(vv) + 4
        << "' font-size='10'>" << vbuf << "</text>\n";
  }
  svg << "<polyline fill='none' stroke='#1f6fb2' stroke-width='1.5' points='";
  for (std::size_t k = 0; k < t.size(); ++k) {
    svg << p.px(t[k]) << ',' << p.py(v[k]) << ' ';
  }
  svg << "'/>\n";
}

}  // namespace

std::string render_run_svg(const RunRecord& record, const std::string& hash) {
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='640' height='560'>\n";
  svg << "<!-- gkdvbh v" << GKDVBH_VERSION_STRING << " config_hash=" << hash
      << " -->\n";
  if (!record.times.empty()) {
    const double tmin = record.times.front();
    const double tmax = std::max(record.times.back(), tmin + 1e-12);
    double vmax = 1e-300;
    for (double v : record.l2) vmax = std::max(vmax, v);
    SvgPanel lin{60, 20, 540, 230, tmin, tmax, 0.0, vmax * 1.05};
    append_panel(svg, lin, record.times, record.l2, "l2(t)");

    std::vector<double> logs(record.l2.size());
    double lmin = 0.0, lmax = -300.0;
    for (std::size_t k = 0; k < record.l2.size(); ++k) {
      logs[k] = std::log10(std::max(record.l2[k], 1e-300));
      lmin = std::min(lmin, logs[k]);
      lmax = std::max(lmax, logs[k]);
    }
    SvgPanel logp{60, 300, 540, 230, tmin, tmax, lmin - 0.5, lmax + 0.5};
    append_panel(svg, logp, record.times, logs, "log10 l2(t)");
  }
  svg << "</svg>\n";
  return svg.str();
}

RunOutput run_to_dir(const SimConfig& config, bool write_svg) {
  validate_config(config);
  ensure_dir(config.output_dir);
  const std::string hash = config_hash(config);
  const std::string csv_path =
      (std::filesystem::path(config.output_dir) / "run.csv").string();
  const std::string meta_path =
      (std::filesystem::path(config.output_dir) / "run_meta.txt").string();

  const Grid grid = build_grid(config.n_points, config.kte_alpha);
  State initial = initial_state(config, grid);

  RunOutput output;
  output.csv_path = csv_path;
  output.meta_path = meta_path;
  write_file(meta_path, render_run_meta(config));
  try {
    output.record = simulate(initial, grid, config.params, config.law,
                             config.solver);
  } catch (const Error& e) {
    // flush whatever the next-lower sampling produced: rerun cheaply is not
    // possible, so emit the sentinel with the failure position
    std::string body = meta_line(hash) + kCsvHeader;
    body += "# FAILED code=" + std::to_string(static_cast<int>(e.code())) +
            " " + e.what() + "\n";
    write_file(csv_path, body);
    throw;
  }
  output.record.config_echo = config_echo(config);
  write_file(csv_path, render_run_csv(output.record, hash));
  if (write_svg) {
    const std::string svg_path =
        (std::filesystem::path(config.output_dir) / "plot.svg").string();
    write_file(svg_path, render_run_svg(output.record, hash));
    output.svg_path = svg_path;
  }
  return output;
}

namespace {

void require_shared_fields(const std::vector<SimConfig>& configs) {
  const SimConfig& first = configs.front();
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const SimConfig& c = configs[i];
    const bool params_equal =
        c.params.nu == first.params.nu && c.params.mu == first.params.mu &&
        c.params.alpha == first.params.alpha &&
        c.params.beta == first.params.beta &&
        c.params.gamma == first.params.gamma &&
        c.params.delta == first.params.delta &&
        c.params.eta == first.params.eta;
    if (!params_equal || c.u0 != first.u0 || c.n_points != first.n_points ||
        c.kte_alpha != first.kte_alpha ||
        c.solver.dt != first.solver.dt ||
        c.solver.t_end != first.solver.t_end) {
      fail(ErrorCode::config,
           "compare: config " + std::to_string(i + 1) +
               " differs from the first in a shared field (params, delta, "
               "u0, grid, dt, t_end must match)");
    }
  }
}

}  // namespace

CompareResult compare_to_dir(const std::vector<SimConfig>& configs,
                             const std::string& out_dir) {
  if (configs.empty()) {
    fail(ErrorCode::config, "compare: no configurations given");
  }
  for (const auto& c : configs) validate_config(c);
  require_shared_fields(configs);
  ensure_dir(out_dir);

  const Grid grid = build_grid(configs[0].n_points, configs[0].kte_alpha);
  const double t_end = configs[0].solver.t_end;
  const double w0 = 0.2 * t_end;
  const double w1 = 0.9 * t_end;

  CompareResult result;
  std::vector<RunRecord> records;
  std::uint64_t combined_hash_seed = 0xcbf29ce484222325ull;
  for (const auto& c : configs) {
    State initial = initial_state(c, grid);
    RunRecord record = simulate(initial, grid, c.params, c.law, c.solver);
    record.config_echo = config_echo(c);
    const DecayFit fit = fit_decay_rate_floored(record, w0, w1);
    CompareEntry entry;
    entry.law = control_kind_name(c.law.kind);
    entry.slope = fit.slope;
    entry.r_squared = fit.r_squared;
    switch (c.law.kind) {
      case ControlKind::flux_d1:
      case ControlKind::flux_d2:
      case ControlKind::curvature:
        entry.theoretical_rate = theoretical_rate_zeta(c.params).value;
        break;
      case ControlKind::simple: {
        const auto cond = condition_2p55(c.params);
        entry.theoretical_rate =
            cond.satisfied ? theoretical_rate_varrho(
                                 c.params, varrho_maximizing_theta(c.params))
                           : 0.0;
        break;
      }
      case ControlKind::open:
        entry.theoretical_rate = 0.0;
        break;
    }
    result.entries.push_back(entry);
    records.push_back(std::move(record));
    for (char ch : config_hash(c)) {
      combined_hash_seed ^= static_cast<unsigned char>(ch);
      combined_hash_seed *= 0x100000001b3ull;
    }
  }
  char hash_buf[17];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(combined_hash_seed));
  const std::string hash = hash_buf;

  // curvature must decay strictly slower than every flux/simple companion
  double curvature_slope = 0.0;
  bool has_curvature = false;
  for (const auto& e : result.entries) {
    if (e.law == std::string("curvature")) {
      curvature_slope = e.slope;
      has_curvature = true;
    }
  }
  if (has_curvature) {
    result.ordering_checked = true;
    result.ordering_holds = true;
    result.ordering_gap = 1e300;
    for (const auto& e : result.entries) {
      if (e.law == std::string("curvature") || e.law == std::string("open")) {
        continue;
      }
      const double gap = curvature_slope - e.slope;  // >0: curvature slower
      result.ordering_gap = std::min(result.ordering_gap, gap);
      if (gap <= 0.0) result.ordering_holds = false;
    }
    if (result.entries.size() <= 1) result.ordering_gap = 0.0;
  }

  // compare.csv: shared time column + one l2 column per law
  std::ostringstream csv;
  csv << meta_line(hash) << "t";
  for (const auto& e : result.entries) csv << ",l2_" << e.law;
  csv << "\n";
  for (std::size_t k = 0; k < records[0].times.size(); ++k) {
    csv << sci(records[0].times[k]);
    for (const auto& r : records) csv << ',' << sci(r.l2[k]);
    csv << "\n";
  }
  result.csv_path =
      (std::filesystem::path(out_dir) / "compare.csv").string();
  write_file(result.csv_path, csv.str());

  std::ostringstream table;
  table << meta_line(hash);
  table << "law           slope        r_squared    theoretical_rate\n";
  for (const auto& e : result.entries) {
    char line[128];
    std::snprintf(line, sizeof line, "%-12s %+12.6f %12.8f %+16.6f\n",
                  e.law.c_str(), e.slope, e.r_squared, e.theoretical_rate);
    table << line;
  }
  if (result.ordering_checked) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "ordering curvature-is-slower: %s (min slope gap %+.6f)\n",
                  result.ordering_holds ? "OK" : "VIOLATED",
                  result.ordering_gap);
    table << line;
  }
  result.table_path =
      (std::filesystem::path(out_dir) / "slopes.txt").string();
  write_file(result.table_path, table.str());
  return result;
}

}  // namespace gkdvbh
