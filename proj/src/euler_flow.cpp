#include "wiso/euler_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "wiso/error.hpp"

namespace wiso {

namespace {

// x, y, theta, running integral of y^alpha, running integral of y^beta x (-y')
constexpr std::size_t kDim = 5;
using State = std::array<double, kDim>;

// kappa at lambda = 1, d = 0. Stages may probe slightly below y = 0.
double reduced_curvature(double y, const WeightPair& w) {
  const double e = w.beta() - w.alpha();
  const double yy = (e < 0.0) ? std::max(y, std::numeric_limits<double>::min()) : std::max(y, 0.0);
  return w.gamma() * std::pow(yy, e);
}

State rhs(const State& u, const WeightPair& w) {
  const double y = std::max(u[1], 0.0);
  const double c = std::cos(u[2]);
  const double s = std::sin(u[2]);
  return {c, s, -reduced_curvature(u[1], w), std::pow(y, w.alpha()), -std::pow(y, w.beta()) * u[0] * s};
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  State next;
  State k_next;  // derivative at `next` (first-same-as-last)
  double err;    // max-norm local error estimate
};

StepResult dp45_step(const State& u, const State& k1, double h, const WeightPair& w) {
  auto comb = [&](auto... terms) {
    State out = u;
    for (std::size_t i = 0; i < kDim; ++i) {
      double acc = 0.0;
      ((acc += terms.first * (*terms.second)[i]), ...);
      out[i] += h * acc;
    }
    return out;
  };
  using P = std::pair<double, const State*>;
  const State k2 = rhs(comb(P{a21, &k1}), w);
  const State k3 = rhs(comb(P{a31, &k1}, P{a32, &k2}), w);
  const State k4 = rhs(comb(P{a41, &k1}, P{a42, &k2}, P{a43, &k3}), w);
  const State k5 = rhs(comb(P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4}), w);
  const State k6 = rhs(comb(P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5}), w);
  const State next = comb(P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6});
  const State k7 = rhs(next, w);
  double err = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    err = std::max(err, std::abs(ei));
  }
  return {next, k7, err};
}

EulerState make_state(double s, const State& u, const WeightPair& w) {
  return {s, u[0], u[1], u[2], reduced_curvature(u[1], w)};
}

}  // namespace

double curvature(double y, const WeightPair& w, double lambda, double d) {
  if (!(y > 0.0)) throw Error(ErrorCode::Domain, "curvature requires y > 0");
  const double a = w.alpha();
  return lambda * std::pow(y, w.beta() - a) * w.gamma() - a * d * std::pow(y, -1.0 - a);
}

EulerTrajectory shoot(const WeightPair& w, const ShootConfig& cfg) {
  w.require_positive_gamma();
  if (!(cfg.step_tol > 0.0) || !(cfg.y_stop > 0.0) || !(cfg.y_stop < 1.0) || !(cfg.initial_step > 0.0))
    throw Error(ErrorCode::Domain, "shoot configuration needs positive step_tol, initial_step and y_stop in (0, 1)");

  EulerTrajectory traj;
  traj.weights = w;
  traj.step_tol = cfg.step_tol;

  State u{0.0, 1.0, 0.0, 0.0, 0.0};
  State k = rhs(u, w);
  double s = 0.0;
  double h = cfg.initial_step;
  double err_prev = 1.0;
  traj.states.push_back(make_state(s, u, w));

  constexpr double kSafety = 0.9;
  constexpr double kMinStep = 1e-14;
  bool done = false;
  for (std::size_t step = 0; step < cfg.max_steps && !done; ++step) {
    if (h < kMinStep)
      throw Error(ErrorCode::NonConvergence,
                  "step size underflow at y = " + std::to_string(u[1]) + " (y_stop " + std::to_string(cfg.y_stop) + ")");
    StepResult r = dp45_step(u, k, h, w);
    // Error per unit arclength, normalised so that ratio <= 1 accepts.
    const double ratio = r.err / (cfg.step_tol * h);
    if (!(ratio <= 1.0)) {
      ++traj.rejected_steps;
      const double shrink = std::isfinite(ratio) ? std::max(0.2, kSafety * std::pow(ratio, -0.25)) : 0.2;
      h *= shrink;
      continue;
    }
    if (r.next[1] <= 0.0) {
      // Overshot the axis: aim the step at y_stop / 2 along the near-vertical descent.
      ++traj.rejected_steps;
      const double drop = u[1] - r.next[1];
      h *= std::clamp((u[1] - 0.5 * cfg.y_stop) / drop, 0.05, 0.95);
      continue;
    }
    s += h;
    u = r.next;
    k = r.k_next;
    traj.states.push_back(make_state(s, u, w));
    if (u[1] <= cfg.y_stop) {
      done = true;
      break;
    }
    // PI controller (Gustafsson) on the normalised error.
    const double rr = std::max(ratio, 1e-10);
    double fac = kSafety * std::pow(rr, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
    fac = std::clamp(fac, 0.2, 5.0);
    err_prev = rr;
    double h_next = h * fac;
    // Do not step far past y = 0 when descending.
    if (k[1] < 0.0) h_next = std::min(h_next, 2.0 * u[1] / -k[1] + cfg.y_stop);
    h = h_next;
  }
  if (!done) throw Error(ErrorCode::NonConvergence, "shoot exhausted max_steps before reaching y_stop");

  const EulerState& last = traj.states.back();
  const double sin_t = std::sin(last.theta);
  const double ds = (sin_t < 0.0) ? last.y / -sin_t : 0.0;
  traj.length = last.s + ds;
  traj.endpoint_x = last.x + std::cos(last.theta) * ds;
  traj.weighted_perimeter = 2.0 * u[3];
  traj.weighted_area = 2.0 * u[4];
  return traj;
}

double first_integral_residual(const EulerTrajectory& traj, const WeightPair& w) {
  double worst = 0.0;
  for (const EulerState& st : traj.states) {
    const double y = std::max(st.y, 0.0);
    const double r = std::pow(y, w.alpha()) * std::cos(st.theta) - traj.lambda * std::pow(y, w.beta() + 1.0) - traj.d;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double compare_to_profile(const EulerTrajectory& traj, const OptimalProfile& prof) {
  if (!(traj.weights == prof.weights()))
    throw Error(ErrorCode::Domain, "trajectory and profile were built for different weights");
  double worst = 0.0;
  for (const EulerState& st : traj.states) {
    const double y = std::clamp(st.y, 0.0, 1.0);
    worst = std::max(worst, std::abs(st.x - prof(y)));
  }
  return worst;
}

}  // namespace wiso
