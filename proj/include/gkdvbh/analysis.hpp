#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gkdvbh/model.hpp"

namespace gkdvbh {

/// Time series recorded along one simulation.
struct RunRecord {
  std::vector<double> times;
  std::vector<double> l2;
  std::vector<double> h1_semi;
  std::vector<double> linf;
  std::vector<double> u_at_1;
  std::vector<std::array<double, 3>> bc_residuals;
  std::vector<int> newton_iters;
  std::string config_echo;  ///< canonical key = value echo of the run config
};

double l2_norm(const State& state, const Grid& grid);
double h1_seminorm(const State& state, const Grid& grid);
double max_norm(const State& state);

/// ζ = ν − β(1−γ)²/4 and whether the L² stabilization hypothesis ζ>0 holds.
struct RateZeta {
  double value = 0.0;
  bool positive = false;
};
RateZeta theoretical_rate_zeta(const ModelParams& params);

/// ν > max{α²/(2β(2δ+1)), β(1+γ²)/2 + α²/(2β(δ+2)^(2(δ+1)/(δ+2)))}.
struct Condition2p55 {
  bool satisfied = false;
  double threshold = 0.0;
};
Condition2p55 condition_2p55(const ModelParams& params);

/// ϱ(θ) = ν − α²/(2θβ(δ+2)^(2(δ+1)/(δ+2))) − β(1+γ²)/(2θ), θ in (0,1).
double theoretical_rate_varrho(const ModelParams& params, double theta);

/// θ from {0.001,...,0.999} maximizing ϱ (ϱ is increasing in θ, so this is
/// the grid edge; kept as a helper so envelope callers pick a valid θ).
double varrho_maximizing_theta(const ModelParams& params);

struct DecayFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of ln(l2) against t over [t_start, t_end]. Requires at
/// least 5 samples in the window and positive l2 there.
DecayFit fit_decay_rate(const RunRecord& record, double t_start, double t_end);

/// fit_decay_rate with the trailing solver-precision floor removed: samples
/// after l2 first drops below 10× its final value are excluded (no-op for
/// non-decaying runs).
DecayFit fit_decay_rate_floored(const RunRecord& record, double t_start,
                                double t_end);

/// l2[k] ≤ l2[0]·e^(−rate·t_k)·(1+slack) at every sample.
bool envelope_check_l2(const RunRecord& record, double rate, double slack);

/// Ψ(t)=h1_semi²+u(1)² against the H¹ envelope
///   {Ψ(0) + [(ϱ+2(μ+1))/ϱ + β(1+γ)²/(2θ(1−θ)ν)]·‖u₀‖²}·e^(−ϱt/2)
/// with multiplicative slack 1.05. Requires a `simple`-law record, the
/// dissipation condition, θ in (0,1), and ϱ(θ)>0; otherwise raises
/// hypothesis_not_met.
bool envelope_check_h1(const RunRecord& record, const ModelParams& params,
                       ControlLaw law, double theta);

/// max-node |u| against 4·{same brace}·e^(−ϱt/2), slack 1.05. Same
/// hypotheses as envelope_check_h1.
bool envelope_check_pointwise(const RunRecord& record,
                              const ModelParams& params, ControlLaw law,
                              double theta);

/// Deterministic generator state for the random trial suites.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : state_(seed ? seed : 1) {}
  double uniform(double lo, double hi);
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// Dense-coefficient polynomial p(x) = Σ c_k x^k with p(0)=0, used as the
/// smooth test-function family for the inequality and functional suites.
struct TestPolynomial {
  std::vector<double> coeffs;  ///< coeffs[k] multiplies x^k, coeffs[0]=0

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  Vector sample(const Grid& grid) const;
  double sup_norm(int probes = 2001) const;
};

TestPolynomial random_test_polynomial(TrialRng& rng, int degree,
                                      double coeff_scale);

/// Random polynomial corrected so that u_x(1) = −g1(u(1)) holds exactly (the
/// correction x²(1−x) vanishes at both ends, so u(1) is untouched and the
/// solve is linear). With match_curvature the x³(1−x) direction is added and
/// u_xx(1) = g2(u(1)) is matched as well. Rejection-sampled until the sup
/// norm stays within sup_bound.
TestPolynomial random_bc_polynomial(TrialRng& rng, const ModelParams& params,
                                    ControlLaw law, bool match_curvature,
                                    double sup_bound);

/// One inequality/identity check over randomized trials.
struct OracleResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_margin = 0.0;  ///< min over trials of (bound − value)
};

struct InequalityReport {
  std::vector<OracleResult> results;
  bool all_passed() const;
};

/// Randomized verification of the discrete Poincaré, Agmon and interpolation
/// inequalities plus the third-derivative boundary identities, `trials`
/// draws each.
InequalityReport inequality_oracles(std::uint64_t seed, int trials,
                                    const Grid& grid);

}  // namespace gkdvbh
