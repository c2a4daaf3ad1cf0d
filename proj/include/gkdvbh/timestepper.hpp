#pragma once

#include <functional>

#include "gkdvbh/analysis.hpp"
#include "gkdvbh/model.hpp"

namespace gkdvbh {

struct SolverSettings {
  double dt = 1e-3;
  double t_end = 5.0;
  double newton_tol = 1e-10;
  int newton_max_iter = 25;
  int sample_every = 1;
};

void validate_settings(const SolverSettings& settings);

/// One backward-Euler step. The nonlinear system keeps the interior rows
/// u⁺ − u − dt·rhs(u⁺) and replaces rows {0, n−2, n−1} by the boundary
/// constraints u⁺(0)=0, (d1·u⁺)(1)+g1(u⁺(1))=0, (d2·u⁺)(1)−g2(u⁺(1))=0.
/// Newton iterates from the previous state until both the residual sup norm
/// and the last update sup norm drop below newton_tol. Returns the advanced
/// state and the number of iterations used.
struct StepResult {
  State state;
  int newton_iters = 0;
};
StepResult step(const State& state, const Grid& grid,
                const ModelParams& params, ControlLaw law,
                const SolverSettings& settings);

/// Samples u0 at the nodes and zeroes the x=0 value; derivative conditions
/// are left to the first implicit solve.
State project_initial(const std::function<double(double)>& u0,
                      const Grid& grid);

/// Runs backward Euler from t=0 to t_end, recording norms, the boundary
/// trace, constraint residuals and Newton counts every sample_every-th step
/// (plus t=0 and the final step). Deterministic for identical inputs.
RunRecord simulate(const State& initial, const Grid& grid,
                   const ModelParams& params, ControlLaw law,
                   const SolverSettings& settings);

}  // namespace gkdvbh
