#pragma once

#include <array>
#include <string>
#include <vector>

#include "gkdvbh/grid.hpp"

namespace gkdvbh {

struct ModelParams;

/// Boundary feedback selection. Every law imposes u(0)=0; the fluxes at x=1
/// are u_x(1) = -g1(u(1)) and u_xx(1) = g2(u(1)).
enum class ControlKind {
  flux_d1,    ///< nonlinear flux feedback, valid for delta = 1
  flux_d2,    ///< nonlinear flux feedback, valid for delta = 2
  curvature,  ///< u_x(1) = 0, curvature feedback via g2 (delta 1 or 2)
  simple,     ///< g1(k) = g2(k) = k, any delta
  open,       ///< zero feedback: u_x(1) = u_xx(1) = 0
};

struct ControlLaw {
  ControlKind kind = ControlKind::open;
};

const char* control_kind_name(ControlKind kind);
ControlKind control_kind_from_name(const std::string& name);

/// Throws a config error unless `kind` admits `delta`.
void validate_law_delta(ControlKind kind, int delta);

double g1(double k, const ModelParams& params, ControlLaw law);
double g2(double k, const ModelParams& params, ControlLaw law);

/// Derivatives dg1/dk, dg2/dk used by the Newton constraint rows.
double g1_prime(double k, const ModelParams& params, ControlLaw law);
double g2_prime(double k, const ModelParams& params, ControlLaw law);

/// [u(0), (d1·u)(1) + g1(u(1)), (d2·u)(1) − g2(u(1))] for the nodal values u.
std::array<double, 3> boundary_residual(const Vector& u, const Grid& grid,
                                        const ModelParams& params,
                                        ControlLaw law);

/// True iff g1 and g2 are nondecreasing along the (ascending) samples.
bool monotone_increase_check(ControlLaw law, const ModelParams& params,
                             const std::vector<double>& k_samples);

}  // namespace gkdvbh
