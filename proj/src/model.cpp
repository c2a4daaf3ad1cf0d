#include "gkdvbh/model.hpp"

#include <algorithm>
#include <cmath>

#include "gkdvbh/errors.hpp"

namespace gkdvbh {

double ipow(double x, int n) {
  double r = 1.0;
  double base = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

ModelParams make_params(double nu, double mu, double alpha, double beta,
                        double gamma, int delta, double eta, double rho_cut) {
  ModelParams p;
  p.nu = nu;
  p.mu = mu;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.eta = eta;
  p.rho_cut = rho_cut;
  validate_params(p);
  return p;
}

void validate_params(const ModelParams& p) {
  if (!(p.nu > 0.0)) fail(ErrorCode::config, "nu must be > 0");
  if (!(p.mu > 0.0)) fail(ErrorCode::config, "mu must be > 0");
  if (!(p.alpha > 0.0)) fail(ErrorCode::config, "alpha must be > 0");
  if (!(p.beta > 0.0)) fail(ErrorCode::config, "beta must be > 0");
  if (!(p.gamma > 0.0 && p.gamma < 1.0))
    fail(ErrorCode::config, "gamma must lie in (0,1)");
  if (p.delta < 1) fail(ErrorCode::config, "delta must be >= 1");
  if (!(p.eta > 0.0)) fail(ErrorCode::config, "eta must be > 0");
  if (!(p.rho_cut > 0.0)) fail(ErrorCode::config, "rho_cut must be > 0");
}

double convective_flux(double v, const ModelParams& p) {
  return ipow(v, p.delta + 1) / (p.delta + 1.0);
}

Vector cutoff_flux(const Vector& values, const ModelParams& p) {
  Vector out(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    out[j] = convective_flux(values[j], p);
  }
  const double sup = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  if (sup > p.rho_cut) {
    out *= ipow(p.rho_cut / sup, p.delta + 1);
  }
  return out;
}

Vector reaction(const Vector& values, const ModelParams& p) {
  Vector out(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const double u = values[j];
    const double ud = ipow(u, p.delta);
    out[j] = p.beta * u * (1.0 - ud) * (ud - p.gamma);
  }
  return out;
}

Vector rhs(const State& state, const Grid& grid, const ModelParams& p) {
  const Vector& u = state.values;
  if (u.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch, "rhs: state/grid size mismatch");
  }
  Vector ud(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) ud[j] = ipow(u[j], p.delta);
  return p.nu * (grid.d2 * u) - p.mu * (grid.d3 * u) -
         p.alpha * ud.cwiseProduct(grid.d1 * u) + reaction(u, p);
}

Matrix rhs_jacobian(const State& state, const Grid& grid,
                    const ModelParams& p) {
  const Vector& u = state.values;
  if (u.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch,
         "rhs_jacobian: state/grid size mismatch");
  }
  const Eigen::Index n = u.size();
  Vector ud(n), udm1(n), reaction_prime(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = u[j];
    ud[j] = ipow(v, p.delta);
    udm1[j] = (p.delta == 1) ? 1.0 : ipow(v, p.delta - 1);
    reaction_prime[j] =
        p.beta * ((1.0 - ud[j]) * (ud[j] - p.gamma) -
                  v * p.delta * udm1[j] * (ud[j] - p.gamma) +
                  v * (1.0 - ud[j]) * p.delta * udm1[j]);
  }
  const Vector du = grid.d1 * u;
  Matrix jac = p.nu * grid.d2 - p.mu * grid.d3;
  jac -= p.alpha * ud.asDiagonal() * grid.d1;
  jac.diagonal() -= p.alpha * p.delta * udm1.cwiseProduct(du);
  jac.diagonal() += reaction_prime;
  return jac;
}

namespace {

void require_pairing_preconditions(const Vector& v, const Vector& w,
                                   const Grid& grid, const ModelParams& p,
                                   ControlLaw law) {
  constexpr double tol = 1e-8;
  const auto res = boundary_residual(v, grid, p, law);
  if (std::abs(res[0]) > tol) {
    fail(ErrorCode::constraint_violation,
         "weak_pairing: boundary row 0 (v(0)=0) violated, residual " +
             std::to_string(res[0]));
  }
  if (std::abs(res[1]) > tol) {
    fail(ErrorCode::constraint_violation,
         "weak_pairing: boundary row 1 (v_x(1)+g1(v(1))=0) violated, "
         "residual " +
             std::to_string(res[1]));
  }
  if (std::abs(w[0]) > tol) {
    fail(ErrorCode::constraint_violation,
         "weak_pairing: boundary row 0 (w(0)=0) violated, residual " +
             std::to_string(w[0]));
  }
}

}  // namespace

double weak_pairing(const Vector& v, const Vector& w, const Grid& grid,
                    const ModelParams& p, ControlLaw law) {
  if (v.size() != grid.n_points || w.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch,
         "weak_pairing: vector/grid size mismatch");
  }
  require_pairing_preconditions(v, w, grid, p, law);
  const int last = grid.n_points - 1;
  const Vector vx = grid.d1 * v;
  const Vector vxx = grid.d2 * v;
  const Vector wx = grid.d1 * w;
  const Vector frho = cutoff_flux(v, p);
  const double k = v[last];
  double result = p.nu * integrate(vx.cwiseProduct(wx), grid);
  result += p.nu * g1(k, p, law) * w[last];
  result -= p.mu * integrate(vxx.cwiseProduct(wx), grid);
  result += p.mu * g2(k, p, law) * w[last];
  result += p.alpha * (frho[last] * w[last] - integrate(frho.cwiseProduct(wx), grid));
  // reaction() already carries the β factor
  result -= integrate(reaction(v, p).cwiseProduct(w), grid);
  return result;
}

double omega_rho(const ModelParams& p) {
  const double l_rho = ipow(2.0, 4 * p.delta + 3) * ipow(p.rho_cut, 2 * p.delta);
  return p.alpha * l_rho / p.nu + ipow(2.0, 2 * p.delta - 1) * p.beta *
                                      (1.0 + p.gamma) * (1.0 + p.gamma) *
                                      (p.delta + 1.0) * (p.delta + 1.0);
}

double monotonicity_gap(const Vector& v, const Vector& w, double omega,
                        const Grid& grid, const ModelParams& p,
                        ControlLaw law) {
  const Vector z = v - w;
  const double pair_diff =
      weak_pairing(v, z, grid, p, law) - weak_pairing(w, z, grid, p, law);
  const double l2_sq = integrate(z.cwiseProduct(z), grid);
  const Vector zx = grid.d1 * z;
  const double h1_sq = l2_sq + integrate(zx.cwiseProduct(zx), grid);
  return pair_diff + omega * l2_sq -
         std::max(p.nu / 2.0, p.beta * p.gamma) * h1_sq;
}

}  // namespace gkdvbh
