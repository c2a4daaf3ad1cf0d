#include "gkdvbh/control.hpp"

#include "gkdvbh/errors.hpp"
#include "gkdvbh/model.hpp"

namespace gkdvbh {

namespace {

// Gain bracket η + α²/(η(δ+2)²)·k^(2δ) of the δ=1 flux law.
double flux1_bracket(double k, const ModelParams& p) {
  const double c = p.alpha * p.alpha / (p.eta * (p.delta + 2.0) * (p.delta + 2.0));
  return p.eta + c * ipow(k, 2 * p.delta);
}

// Gain bracket η + α/(δ+2)·k^δ of the δ=2 flux law.
double flux2_bracket(double k, const ModelParams& p) {
  return p.eta + p.alpha / (p.delta + 2.0) * ipow(k, p.delta);
}

}  // namespace

const char* control_kind_name(ControlKind kind) {
  switch (kind) {
    case ControlKind::flux_d1: return "flux_d1";
    case ControlKind::flux_d2: return "flux_d2";
    case ControlKind::curvature: return "curvature";
    case ControlKind::simple: return "simple";
    case ControlKind::open: return "open";
  }
  return "?";
}

ControlKind control_kind_from_name(const std::string& name) {
  if (name == "flux_d1") return ControlKind::flux_d1;
  if (name == "flux_d2") return ControlKind::flux_d2;
  if (name == "curvature") return ControlKind::curvature;
  if (name == "simple") return ControlKind::simple;
  if (name == "open") return ControlKind::open;
  fail(ErrorCode::config, "unknown control law '" + name +
                              "' (flux_d1 | flux_d2 | curvature | simple | open)");
}

void validate_law_delta(ControlKind kind, int delta) {
  switch (kind) {
    case ControlKind::flux_d1:
      if (delta != 1)
        fail(ErrorCode::config,
             "control flux_d1 requires delta = 1 (got delta = " +
                 std::to_string(delta) + ")");
      break;
    case ControlKind::flux_d2:
      if (delta != 2)
        fail(ErrorCode::config,
             "control flux_d2 requires delta = 2 (got delta = " +
                 std::to_string(delta) + ")");
      break;
    case ControlKind::curvature:
      if (delta != 1 && delta != 2)
        fail(ErrorCode::config,
             "control curvature requires delta in {1,2} (got delta = " +
                 std::to_string(delta) + ")");
      break;
    case ControlKind::simple:
    case ControlKind::open:
      if (delta < 1)
        fail(ErrorCode::config, "delta must be >= 1");
      break;
  }
}

double g1(double k, const ModelParams& p, ControlLaw law) {
  switch (law.kind) {
    case ControlKind::flux_d1:
      return flux1_bracket(k, p) * k / p.nu;
    case ControlKind::flux_d2:
      return flux2_bracket(k, p) * k / p.nu;
    case ControlKind::simple:
      return k;
    case ControlKind::curvature:
    case ControlKind::open:
      return 0.0;
  }
  return 0.0;
}

double g1_prime(double k, const ModelParams& p, ControlLaw law) {
  switch (law.kind) {
    case ControlKind::flux_d1: {
      const double c =
          p.alpha * p.alpha / (p.eta * (p.delta + 2.0) * (p.delta + 2.0));
      return (p.eta + (2.0 * p.delta + 1.0) * c * ipow(k, 2 * p.delta)) / p.nu;
    }
    case ControlKind::flux_d2: {
      const double b = p.alpha / (p.delta + 2.0);
      return (p.eta + (p.delta + 1.0) * b * ipow(k, p.delta)) / p.nu;
    }
    case ControlKind::simple:
      return 1.0;
    case ControlKind::curvature:
    case ControlKind::open:
      return 0.0;
  }
  return 0.0;
}

double g2(double k, const ModelParams& p, ControlLaw law) {
  switch (law.kind) {
    case ControlKind::flux_d1: {
      const double q = flux1_bracket(k, p);
      return p.delta / (p.nu * p.nu) * q * q * k;
    }
    case ControlKind::flux_d2: {
      const double q = flux2_bracket(k, p);
      return p.delta / (p.nu * p.nu) * q * q * k;
    }
    case ControlKind::curvature:
      if (p.delta == 1) return flux1_bracket(k, p) * k / p.mu;
      return p.eta / p.mu * k;
    case ControlKind::simple:
      return k;
    case ControlKind::open:
      return 0.0;
  }
  return 0.0;
}

double g2_prime(double k, const ModelParams& p, ControlLaw law) {
  switch (law.kind) {
    case ControlKind::flux_d1: {
      const double c =
          p.alpha * p.alpha / (p.eta * (p.delta + 2.0) * (p.delta + 2.0));
      const double q = flux1_bracket(k, p);
      return p.delta / (p.nu * p.nu) * q *
             (q + 4.0 * p.delta * c * ipow(k, 2 * p.delta));
    }
    case ControlKind::flux_d2: {
      const double b = p.alpha / (p.delta + 2.0);
      const double q = flux2_bracket(k, p);
      return p.delta / (p.nu * p.nu) * q *
             (q + 2.0 * p.delta * b * ipow(k, p.delta));
    }
    case ControlKind::curvature:
      if (p.delta == 1) {
        const double c =
            p.alpha * p.alpha / (p.eta * (p.delta + 2.0) * (p.delta + 2.0));
        return (p.eta + 3.0 * c * k * k) / p.mu;
      }
      return p.eta / p.mu;
    case ControlKind::simple:
      return 1.0;
    case ControlKind::open:
      return 0.0;
  }
  return 0.0;
}

std::array<double, 3> boundary_residual(const Vector& u, const Grid& grid,
                                        const ModelParams& params,
                                        ControlLaw law) {
  const int last = grid.n_points - 1;
  if (u.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch,
         "boundary_residual: state/grid size mismatch");
  }
  const double k = u[last];
  return {u[0], grid.d1.row(last).dot(u) + g1(k, params, law),
          grid.d2.row(last).dot(u) - g2(k, params, law)};
}

bool monotone_increase_check(ControlLaw law, const ModelParams& params,
                             const std::vector<double>& k_samples) {
  for (std::size_t i = 1; i < k_samples.size(); ++i) {
    if (k_samples[i] < k_samples[i - 1]) {
      fail(ErrorCode::invalid_argument,
           "monotone_increase_check: samples must be ascending");
    }
    if (g1(k_samples[i], params, law) < g1(k_samples[i - 1], params, law) ||
        g2(k_samples[i], params, law) < g2(k_samples[i - 1], params, law)) {
      return false;
    }
  }
  return true;
}

}  // namespace gkdvbh
