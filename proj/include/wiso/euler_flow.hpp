#pragma once

#include <cstddef>
#include <vector>

#include "wiso/optimal_set.hpp"
#include "wiso/weights.hpp"

namespace wiso {

/// One sample of the boundary curve in arclength. theta is the tangent angle
/// (x' = cos theta, y' = sin theta); it starts at 0 and falls toward -pi/2.
struct EulerState {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
};

struct EulerTrajectory {
  WeightPair weights{0.0, 0.0};
  double lambda = 1.0;
  double d = 0.0;
  double step_tol = 0.0;
  std::vector<EulerState> states;
  /// Arclength and x where the curve meets y = 0, extended from the last
  /// state along its tangent.
  double length = 0.0;
  double endpoint_x = 0.0;
  /// 2 * integral of y^alpha ds and 2 * integral of y^beta x (-y') ds along
  /// the half-curve: P_alpha and A_beta of the enclosed symmetric set.
  double weighted_perimeter = 0.0;
  double weighted_area = 0.0;
  std::size_t rejected_steps = 0;
};

struct ShootConfig {
  double step_tol = 1e-10;  // local error bound per unit arclength
  double y_stop = 1e-9;
  double initial_step = 1e-3;
  std::size_t max_steps = 1'000'000;
};

/// Curvature of an extremal at height y:
/// kappa = lambda (beta + 1 - alpha) y^(beta - alpha) - alpha d y^(-1 - alpha).
double curvature(double y, const WeightPair& w, double lambda, double d);

/// Integrates x' = cos theta, y' = sin theta, theta' = -kappa(y) with
/// lambda = 1, d = 0 from the apex (0, 1, 0) using Dormand-Prince 5(4) with
/// PI step control until y <= y_stop. Requires gamma > 0.
EulerTrajectory shoot(const WeightPair& w, const ShootConfig& cfg = {});

/// max over states of |y^alpha cos theta - lambda y^(beta+1) - d|.
double first_integral_residual(const EulerTrajectory& traj, const WeightPair& w);

/// sup over states of |x(s) - f(y(s))|. Throws Error(Domain) if the weights differ.
double compare_to_profile(const EulerTrajectory& traj, const OptimalProfile& prof);

}  // namespace wiso
