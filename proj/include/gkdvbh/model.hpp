#pragma once

#include "gkdvbh/control.hpp"
#include "gkdvbh/grid.hpp"

namespace gkdvbh {

/// Coefficients of u_t = ν u_xx − μ u_xxx − α u^δ u_x + β u(1−u^δ)(u^δ−γ)
/// plus the control gain η and the cutoff radius ρ used by the dissipativity
/// functionals. Construct through make_params so the ranges are enforced.
struct ModelParams {
  double nu = 1.0;      ///< dissipation, > 0
  double mu = 0.1;      ///< dispersion, > 0
  double alpha = 1.0;   ///< convection, > 0
  double beta = 1.0;    ///< reaction, > 0
  double gamma = 0.5;   ///< reaction root, in (0,1)
  int delta = 1;        ///< nonlinearity power, ≥ 1
  double eta = 1.0;     ///< control gain, > 0
  double rho_cut = 1.0; ///< cutoff radius, > 0
};

ModelParams make_params(double nu, double mu, double alpha, double beta,
                        double gamma, int delta, double eta, double rho_cut);

/// Throws on a range violation; used by every entry point taking params.
void validate_params(const ModelParams& params);

/// Nodal solution values at one time instant.
struct State {
  Vector values;
  double time = 0.0;
};

/// x^n for integer n ≥ 0 by squaring; ipow(0,0) = 1.
double ipow(double x, int n);

/// f(v) = v^(δ+1)/(δ+1).
double convective_flux(double v, const ModelParams& params);

/// f_ρ: f(values) pointwise when max|values| ≤ ρ, otherwise scaled by
/// (ρ/max|values|)^(δ+1). The branch is global in the sup norm.
Vector cutoff_flux(const Vector& values, const ModelParams& params);

/// Pointwise β·u·(1−u^δ)·(u^δ−γ).
Vector reaction(const Vector& values, const ModelParams& params);

/// Semi-discrete right-hand side ν d2·u − μ d3·u − α u^δ⊙(d1·u) + reaction(u).
/// Boundary rows are meaningful only until the stepper overwrites them.
Vector rhs(const State& state, const Grid& grid, const ModelParams& params);

/// d(rhs)/du as a dense matrix.
Matrix rhs_jacobian(const State& state, const Grid& grid,
                    const ModelParams& params);

/// Weak pairing ⟨A_ρ(v), w⟩ of the boundary-controlled operator:
///   ν(v_x,w_x) + ν g1(v(1))w(1) − μ(v_xx,w_x) + μ g2(v(1))w(1)
///   + α[f_ρ(v)(1)·w(1) − (f_ρ(v), w_x)] − β(v(1−v^δ)(v^δ−γ), w).
/// Requires v to satisfy u(0)=0 and u_x(1)=−g1(u(1)) to residual 1e-8 and
/// w(0)=0; violations raise a constraint error naming the offending row.
double weak_pairing(const Vector& v, const Vector& w, const Grid& grid,
                    const ModelParams& params, ControlLaw law);

/// ω_ρ = α·L_ρ/ν + 2^(2δ−1)·β·(1+γ)²·(δ+1)², with L_ρ = 2^(4δ+3)·ρ^(2δ).
double omega_rho(const ModelParams& params);

/// ⟨A_ρ(v)−A_ρ(w), v−w⟩ + ω‖v−w‖²_{L²} − max{ν/2, βγ}·‖v−w‖²_{H¹};
/// nonnegative (up to discretization slack) for ω ≥ ω_ρ.
double monotonicity_gap(const Vector& v, const Vector& w, double omega,
                        const Grid& grid, const ModelParams& params,
                        ControlLaw law);

}  // namespace gkdvbh
