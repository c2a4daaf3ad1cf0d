#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gkdvbh/control.hpp"
#include "gkdvbh/model.hpp"
#include "gkdvbh/timestepper.hpp"

namespace gkdvbh {

/// Full description of one simulation. Built from `key = value` config text;
/// every field has a documented default so the empty config is valid.
struct SimConfig {
  ModelParams params;
  ControlLaw law{ControlKind::open};
  int n_points = 33;
  double kte_alpha = 0.5;
  SolverSettings solver;
  std::string u0 = "sin_pi";  ///< sin_pi | zero | bump:a,b | samples:<path>
  std::string output_dir = "out";
  std::uint64_t rng_seed = 42;
};

/// Parses config text. Lines are `key = value`, '#' starts a comment,
/// unknown keys and malformed values are rejected with the line number.
/// `origin` names the source in error messages.
SimConfig parse_config_text(const std::string& text,
                            const std::string& origin);

SimConfig parse_config_file(const std::string& path);

/// Assigns one key (same grammar as a config line) onto an existing config.
void apply_config_key(SimConfig& config, const std::string& key,
                      const std::string& value);

/// Range and compatibility validation; parse_config* call this themselves.
void validate_config(const SimConfig& config);

/// Canonical `key = value` echo, fixed key order, locale-independent.
std::string config_echo(const SimConfig& config);

/// FNV-1a 64 over the canonical echo, as 16 hex digits.
std::string config_hash(const SimConfig& config);

/// Resolves the named initial condition to a callable; samples: files are
/// handled separately by initial_state since they bind to the grid.
State initial_state(const SimConfig& config, const Grid& grid);

}  // namespace gkdvbh
