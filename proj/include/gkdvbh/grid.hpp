#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gkdvbh {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Collocation grid on [0,1]: Kosloff–Tal-Ezer mapped Chebyshev–Gauss–Lobatto
/// nodes in ascending order, spectral differentiation matrices of orders 1–3,
/// and interpolatory quadrature weights. Immutable after construction.
struct Grid {
  int n_points = 0;
  double kte_alpha = 0.0;
  Vector nodes;    ///< ascending, nodes[0]=0, nodes[n-1]=1
  Vector weights;  ///< quadrature weights for ∫₀¹, sum 1, positive
  Matrix d1;       ///< first-derivative operator on nodal values
  Matrix d2;       ///< d1·d1
  Matrix d3;       ///< d1·d2
};

/// Builds the mapped collocation grid. Reference nodes cos(jπ/N) are passed
/// through g(ξ) = arcsin(α·ξ)/arcsin(α) and affinely moved to [0,1]; the
/// differentiation matrix is the barycentric form on the mapped nodes, so
/// polynomials in x up to degree n_points−1 differentiate exactly. Quadrature
/// weights solve the shifted-Chebyshev moment system on the mapped nodes
/// (the Clenshaw–Curtis construction evaluated on this grid).
///
/// Requires n_points ≥ 8 and kte_alpha in (0,1].
Grid build_grid(int n_points, double kte_alpha);

/// Σ_j weights[j]·values[j] ≈ ∫₀¹ values(x) dx.
double integrate(const Vector& values, const Grid& grid);

/// Named targets understood by spectral_convergence_report.
enum class ConvergenceTarget { exp_x, sin_pi, one };

ConvergenceTarget convergence_target_from_name(const std::string& name);

/// (n, max nodal error of d1 against the analytic derivative) per entry of
/// n_list. n_list must be strictly increasing.
std::vector<std::pair<int, double>> spectral_convergence_report(
    ConvergenceTarget target, const std::vector<int>& n_list,
    double kte_alpha);

}  // namespace gkdvbh
