#include "gkdvbh/grid.hpp"

#include <cmath>

#include "gkdvbh/errors.hpp"

namespace gkdvbh {

namespace {

Vector mapped_nodes(int n, double alpha) {
  const int N = n - 1;
  const double asin_alpha = std::asin(alpha);
  Vector x(n);
  for (int j = 0; j < n; ++j) {
    const double xi = -std::cos(M_PI * static_cast<double>(j) / N);
    const double y = std::asin(alpha * xi) / asin_alpha;
    x[j] = 0.5 * (1.0 + y);
  }
  x[0] = 0.0;
  x[n - 1] = 1.0;
  return x;
}

/// Barycentric differentiation matrix (Berrut–Trefethen form) on arbitrary
/// distinct nodes; diagonal by the negative-sum trick so constants
/// differentiate to exactly zero.
Matrix barycentric_d1(const Vector& x) {
  const int n = static_cast<int>(x.size());
  Vector w(n);
  for (int j = 0; j < n; ++j) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k != j) p *= (x[j] - x[k]);
    }
    w[j] = 1.0 / p;
  }
  w /= w.cwiseAbs().maxCoeff();

  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
      row_sum += d(i, j);
    }
    d(i, i) = -row_sum;
  }
  return d;
}

/// Interpolatory weights from the shifted-Chebyshev moment system
/// Σ_j w_j T̃_k(x_j) = ∫₀¹ T̃_k, k = 0..n−1.
Vector moment_weights(const Vector& x) {
  const int n = static_cast<int>(x.size());
  Matrix t(n, n);
  Vector s = 2.0 * x.array() - 1.0;
  t.row(0).setOnes();
  t.row(1) = s.transpose();
  for (int k = 2; k < n; ++k) {
    t.row(k) = 2.0 * s.transpose().cwiseProduct(t.row(k - 1)) - t.row(k - 2);
  }
  Vector m = Vector::Zero(n);
  m[0] = 1.0;
  for (int k = 2; k < n; k += 2) {
    m[k] = 1.0 / (1.0 - static_cast<double>(k) * k);
  }
  return t.partialPivLu().solve(m);
}

}  // namespace

Grid build_grid(int n_points, double kte_alpha) {
  if (n_points < 8) {
    fail(ErrorCode::invalid_argument,
         "build_grid: n_points must be >= 8, got " + std::to_string(n_points));
  }
  if (!(kte_alpha > 0.0) || kte_alpha > 1.0) {
    fail(ErrorCode::invalid_argument,
         "build_grid: kte_alpha must lie in (0,1], got " +
             std::to_string(kte_alpha));
  }
  Grid grid;
  grid.n_points = n_points;
  grid.kte_alpha = kte_alpha;
  grid.nodes = mapped_nodes(n_points, kte_alpha);
  grid.d1 = barycentric_d1(grid.nodes);
  grid.d2 = grid.d1 * grid.d1;
  grid.d3 = grid.d1 * grid.d2;
  grid.weights = moment_weights(grid.nodes);
  return grid;
}

double integrate(const Vector& values, const Grid& grid) {
  if (values.size() != grid.n_points) {
    fail(ErrorCode::dimension_mismatch,
         "integrate: expected " + std::to_string(grid.n_points) +
             " values, got " + std::to_string(values.size()));
  }
  return grid.weights.dot(values);
}

ConvergenceTarget convergence_target_from_name(const std::string& name) {
  if (name == "exp") return ConvergenceTarget::exp_x;
  if (name == "sin_pi") return ConvergenceTarget::sin_pi;
  if (name == "one") return ConvergenceTarget::one;
  fail(ErrorCode::invalid_argument,
       "unknown convergence target '" + name + "' (exp | sin_pi | one)");
}

std::vector<std::pair<int, double>> spectral_convergence_report(
    ConvergenceTarget target, const std::vector<int>& n_list,
    double kte_alpha) {
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      fail(ErrorCode::invalid_argument,
           "spectral_convergence_report: n_list must be strictly increasing");
    }
  }
  std::vector<std::pair<int, double>> report;
  report.reserve(n_list.size());
  for (int n : n_list) {
    Grid grid = build_grid(n, kte_alpha);
    Vector f(n), df(n);
    for (int j = 0; j < n; ++j) {
      const double x = grid.nodes[j];
      switch (target) {
        case ConvergenceTarget::exp_x:
          f[j] = std::exp(x);
          df[j] = std::exp(x);
          break;
        case ConvergenceTarget::sin_pi:
          f[j] = std::sin(M_PI * x);
          df[j] = M_PI * std::cos(M_PI * x);
          break;
        case ConvergenceTarget::one:
          f[j] = 1.0;
          df[j] = 0.0;
          break;
      }
    }
    const double err = (grid.d1 * f - df).cwiseAbs().maxCoeff();
    report.emplace_back(n, err);
  }
  return report;
}

}  // namespace gkdvbh
