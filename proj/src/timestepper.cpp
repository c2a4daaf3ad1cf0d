#include "gkdvbh/timestepper.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gkdvbh/errors.hpp"

namespace gkdvbh {

void validate_settings(const SolverSettings& s) {
  if (!(s.dt > 0.0)) fail(ErrorCode::config, "dt must be > 0");
  if (!(s.t_end > s.dt)) fail(ErrorCode::config, "t_end must exceed dt");
  if (!(s.newton_tol > 0.0)) fail(ErrorCode::config, "newton_tol must be > 0");
  if (s.newton_max_iter < 1)
    fail(ErrorCode::config, "newton_max_iter must be >= 1");
  if (s.sample_every < 1) fail(ErrorCode::config, "sample_every must be >= 1");
}

namespace {

Vector constrained_residual(const Vector& next, const Vector& prev,
                            const Grid& grid, const ModelParams& params,
                            ControlLaw law, double dt) {
  const int last = grid.n_points - 1;
  State trial{next, 0.0};
  Vector g = next - prev - dt * rhs(trial, grid, params);
  g[0] = next[0];
  g[last - 1] = grid.d1.row(last).dot(next) + g1(next[last], params, law);
  g[last] = grid.d2.row(last).dot(next) - g2(next[last], params, law);
  return g;
}

Matrix constrained_jacobian(const Vector& next, const Grid& grid,
                            const ModelParams& params, ControlLaw law,
                            double dt) {
  const int n = grid.n_points;
  const int last = n - 1;
  State trial{next, 0.0};
  Matrix jac = Matrix::Identity(n, n) - dt * rhs_jacobian(trial, grid, params);
  jac.row(0).setZero();
  jac(0, 0) = 1.0;
  jac.row(last - 1) = grid.d1.row(last);
  jac(last - 1, last) += g1_prime(next[last], params, law);
  jac.row(last) = grid.d2.row(last);
  jac(last, last) -= g2_prime(next[last], params, law);
  return jac;
}

}  // namespace

StepResult step(const State& state, const Grid& grid,
                const ModelParams& params, ControlLaw law,
                const SolverSettings& settings) {
  const double dt = settings.dt;
  Vector next = state.values;
  bool update_small = false;
  double residual_norm = 0.0;
  // Convergence needs the residual and the last correction both below tol:
  // the residual alone leaves state error up to ||J^-1||*tol, which floors
  // the decay tails well above roundoff.
  const auto converged = [&](const Vector& g) {
    residual_norm = g.cwiseAbs().maxCoeff();
    return residual_norm < settings.newton_tol && update_small;
  };
  for (int it = 1; it <= settings.newton_max_iter; ++it) {
    const Vector g =
        constrained_residual(next, state.values, grid, params, law, dt);
    if (converged(g)) {
      return {State{next, state.time + dt}, it - 1};
    }
    const Matrix jac = constrained_jacobian(next, grid, params, law, dt);
    Eigen::PartialPivLU<Matrix> lu(jac);
    const Vector delta = lu.solve(g);
    if (!delta.allFinite()) {
      fail(ErrorCode::singular_system,
           "step: singular linear system at t = " + std::to_string(state.time));
    }
    next -= delta;
    update_small = delta.cwiseAbs().maxCoeff() < settings.newton_tol;
  }
  if (converged(
          constrained_residual(next, state.values, grid, params, law, dt))) {
    return {State{next, state.time + dt}, settings.newton_max_iter};
  }
  fail(ErrorCode::solver_divergence,
       "step: Newton did not converge within " +
           std::to_string(settings.newton_max_iter) +
           " iterations at t = " + std::to_string(state.time) +
           " (last residual " + std::to_string(residual_norm) + ")");
}

State project_initial(const std::function<double(double)>& u0,
                      const Grid& grid) {
  Vector values(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) values[j] = u0(grid.nodes[j]);
  values[0] = 0.0;
  return State{values, 0.0};
}

RunRecord simulate(const State& initial, const Grid& grid,
                   const ModelParams& params, ControlLaw law,
                   const SolverSettings& settings) {
  validate_params(params);
  validate_settings(settings);
  validate_law_delta(law.kind, params.delta);
  if (initial.values.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch, "simulate: state/grid size mismatch");
  }

  RunRecord record;
  const auto push_sample = [&](const State& s, int iters) {
    record.times.push_back(s.time);
    record.l2.push_back(l2_norm(s, grid));
    record.h1_semi.push_back(h1_seminorm(s, grid));
    record.linf.push_back(max_norm(s));
    record.u_at_1.push_back(s.values[grid.n_points - 1]);
    record.bc_residuals.push_back(
        boundary_residual(s.values, grid, params, law));
    record.newton_iters.push_back(iters);
  };

  State current = initial;
  current.time = 0.0;
  push_sample(current, 0);

  const long n_steps =
      static_cast<long>(std::ceil(settings.t_end / settings.dt - 1e-12));
  for (long k = 1; k <= n_steps; ++k) {
    StepResult advanced;
    try {
      advanced = step(current, grid, params, law, settings);
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) +
                         " [simulate: failed at t = " +
                         std::to_string(k * settings.dt) + "]");
    }
    current = advanced.state;
    current.time = static_cast<double>(k) * settings.dt;
    if (k % settings.sample_every == 0 || k == n_steps) {
      push_sample(current, advanced.newton_iters);
    }
  }
  return record;
}

}  // namespace gkdvbh
