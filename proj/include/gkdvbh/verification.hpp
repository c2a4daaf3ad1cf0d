#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gkdvbh {

struct VerificationOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  /// Multiplies every theoretical decay rate fed to the envelope checks.
  /// 1.0 in normal operation; the GKDVBH_RATE_MULTIPLIER environment
  /// variable overrides it so a deliberately broken rate can be shown to
  /// fail the suite.
  double rate_multiplier = 1.0;
};

/// Reads GKDVBH_RATE_MULTIPLIER into options (defaults to 1.0).
VerificationOptions default_verification_options();

struct VerificationItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationItem> items;
  bool all_passed() const;
  std::string text() const;  ///< one PASS/FAIL line per item
};

/// Runs the full verification battery: spectral exactness, control-law
/// identities, model consistency, coercivity and monotonicity trials, the
/// inequality oracles, the decay-envelope runs, the rate-ordering
/// comparison, solver regressions and output determinism. One item per
/// acceptance check.
VerificationReport run_verification(const VerificationOptions& options);

}  // namespace gkdvbh
