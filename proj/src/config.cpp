#include "gkdvbh/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "gkdvbh/errors.hpp"
#include "gkdvbh/version.hpp"

namespace gkdvbh {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& value, const std::string& where) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::config, where + ": malformed number '" + value + "'");
  }
  if (pos != value.size() || !std::isfinite(v)) {
    fail(ErrorCode::config, where + ": malformed number '" + value + "'");
  }
  return v;
}

long parse_integer(const std::string& value, const std::string& where) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::config, where + ": malformed integer '" + value + "'");
  }
  if (pos != value.size()) {
    fail(ErrorCode::config, where + ": malformed integer '" + value + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_config_key(SimConfig& c, const std::string& key,
                      const std::string& value) {
  const std::string where = "key '" + key + "'";
  if (key == "nu") c.params.nu = parse_double(value, where);
  else if (key == "mu") c.params.mu = parse_double(value, where);
  else if (key == "alpha") c.params.alpha = parse_double(value, where);
  else if (key == "beta") c.params.beta = parse_double(value, where);
  else if (key == "gamma") c.params.gamma = parse_double(value, where);
  else if (key == "delta") c.params.delta = static_cast<int>(parse_integer(value, where));
  else if (key == "eta") c.params.eta = parse_double(value, where);
  else if (key == "control") c.law.kind = control_kind_from_name(value);
  else if (key == "n_points") c.n_points = static_cast<int>(parse_integer(value, where));
  else if (key == "kte_alpha") c.kte_alpha = parse_double(value, where);
  else if (key == "dt") c.solver.dt = parse_double(value, where);
  else if (key == "t_end") c.solver.t_end = parse_double(value, where);
  else if (key == "newton_tol") c.solver.newton_tol = parse_double(value, where);
  else if (key == "newton_max_iter") c.solver.newton_max_iter = static_cast<int>(parse_integer(value, where));
  else if (key == "sample_every") c.solver.sample_every = static_cast<int>(parse_integer(value, where));
  else if (key == "u0") c.u0 = value;
  else if (key == "output_dir") c.output_dir = value;
  else if (key == "rng_seed") c.rng_seed = static_cast<std::uint64_t>(parse_integer(value, where));
  else fail(ErrorCode::config, "unknown key '" + key + "'");
}

SimConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  SimConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::config, origin + ":" + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line +
                                  "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(ErrorCode::config, origin + ":" + std::to_string(line_no) +
                                  ": empty key or value");
    }
    try {
      apply_config_key(config, key, value);
    } catch (const Error& e) {
      fail(e.code(),
           origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate_config(config);
  return config;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io, "cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

namespace {

/// u0 names: sin_pi | zero | bump:a,b | samples:<path>
void validate_u0_name(const std::string& u0) {
  if (u0 == "sin_pi" || u0 == "zero") return;
  if (u0.rfind("samples:", 0) == 0) {
    if (u0.size() > 8) return;
    fail(ErrorCode::config, "u0 samples: requires a file path");
  }
  if (u0.rfind("bump:", 0) == 0) {
    const std::string rest = u0.substr(5);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCode::config, "u0 bump requires two parameters 'bump:a,b'");
    }
    const double a = parse_double(trim(rest.substr(0, comma)), "u0 bump");
    const double b = parse_double(trim(rest.substr(comma + 1)), "u0 bump");
    if (a < 1.0 || b < 1.0) {
      fail(ErrorCode::config, "u0 bump parameters must be >= 1");
    }
    return;
  }
  fail(ErrorCode::config,
       "unknown u0 '" + u0 + "' (sin_pi | zero | bump:a,b | samples:<path>)");
}

}  // namespace

void validate_config(const SimConfig& c) {
  validate_params(c.params);
  validate_law_delta(c.law.kind, c.params.delta);
  if (c.n_points < 8) fail(ErrorCode::config, "n_points must be >= 8");
  if (!(c.kte_alpha > 0.0) || c.kte_alpha > 1.0) {
    fail(ErrorCode::config, "kte_alpha must lie in (0,1]");
  }
  validate_settings(c.solver);
  validate_u0_name(c.u0);
  if (c.output_dir.empty()) fail(ErrorCode::config, "output_dir is empty");
}

std::string config_echo(const SimConfig& c) {
  std::ostringstream out;
  out << "nu = " << format_double(c.params.nu) << "\n";
  out << "mu = " << format_double(c.params.mu) << "\n";
  out << "alpha = " << format_double(c.params.alpha) << "\n";
  out << "beta = " << format_double(c.params.beta) << "\n";
  out << "gamma = " << format_double(c.params.gamma) << "\n";
  out << "delta = " << c.params.delta << "\n";
  out << "eta = " << format_double(c.params.eta) << "\n";
  out << "control = " << control_kind_name(c.law.kind) << "\n";
  out << "n_points = " << c.n_points << "\n";
  out << "kte_alpha = " << format_double(c.kte_alpha) << "\n";
  out << "dt = " << format_double(c.solver.dt) << "\n";
  out << "t_end = " << format_double(c.solver.t_end) << "\n";
  out << "newton_tol = " << format_double(c.solver.newton_tol) << "\n";
  out << "newton_max_iter = " << c.solver.newton_max_iter << "\n";
  out << "sample_every = " << c.solver.sample_every << "\n";
  out << "u0 = " << c.u0 << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  out << "rng_seed = " << c.rng_seed << "\n";
  return out.str();
}

std::string config_hash(const SimConfig& c) {
  const std::string echo = config_echo(c);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : echo) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

State initial_state(const SimConfig& c, const Grid& grid) {
  if (c.u0 == "sin_pi") {
    return project_initial([](double x) { return std::sin(M_PI * x); }, grid);
  }
  if (c.u0 == "zero") {
    return project_initial([](double) { return 0.0; }, grid);
  }
  if (c.u0.rfind("bump:", 0) == 0) {
    const std::string rest = c.u0.substr(5);
    const auto comma = rest.find(',');
    const double a = parse_double(trim(rest.substr(0, comma)), "u0 bump");
    const double b = parse_double(trim(rest.substr(comma + 1)), "u0 bump");
    // x^a (1-x)^b scaled to unit maximum at x = a/(a+b)
    const double peak =
        std::pow(a / (a + b), a) * std::pow(b / (a + b), b);
    return project_initial(
        [a, b, peak](double x) {
          if (x <= 0.0 || x >= 1.0) return 0.0;
          return std::pow(x, a) * std::pow(1.0 - x, b) / peak;
        },
        grid);
  }
  if (c.u0.rfind("samples:", 0) == 0) {
    const std::string path = c.u0.substr(8);
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open samples file '" + path + "'");
    Vector values(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
      if (!(in >> values[j])) {
        fail(ErrorCode::config,
             "samples file '" + path + "' must hold " +
                 std::to_string(grid.n_points) + " values");
      }
    }
    double extra;
    if (in >> extra) {
      fail(ErrorCode::config,
           "samples file '" + path + "' holds more than " +
               std::to_string(grid.n_points) + " values");
    }
    values[0] = 0.0;
    return State{values, 0.0};
  }
  fail(ErrorCode::config, "unknown u0 '" + c.u0 + "'");
}

}  // namespace gkdvbh
