#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "wiso/euler_flow.hpp"
#include "wiso/harness.hpp"
#include "wiso/optimal_set.hpp"

using namespace wiso;
using wiso::test::rel_err;
using wiso::test::thrown_code;

namespace {

// Exact quarter circle x = sin s, y = cos s, theta = -s.
EulerTrajectory circle_states(int n) {
  EulerTrajectory t;
  t.weights = WeightPair(0, 0);
  for (int k = 0; k <= n; ++k) {
    const double s = 0.5 * std::numbers::pi * k / n * 0.999;
    t.states.push_back({s, std::sin(s), std::cos(s), -s, 1.0});
  }
  return t;
}

}  // namespace

TEST_SUITE("euler_flow") {
  TEST_CASE("curvature hand values") {
    for (double y : {0.1, 0.5, 1.0, 3.0}) CHECK(curvature(y, WeightPair(1.5, 1.5), 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(curvature(0.5, WeightPair(0, 1), 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(curvature(1.0, WeightPair(1, 1), 1.0, -1.0) == doctest::Approx(2.0));
    CHECK(thrown_code([] { curvature(0.0, WeightPair(0, 0), 1.0, 0.0); }) == ErrorCode::Domain);
  }

  TEST_CASE("curvature is positive for lambda > 0 and d <= 0") {
    for (const WeightPair& w : sharp_sweep_grid(true))
      for (double y : {1e-3, 0.1, 0.5, 0.9, 1.0})
        for (double d : {0.0, -0.5}) CHECK(curvature(y, w, 1.0, d) > 0.0);
  }

  TEST_CASE("unweighted extremal is the quarter circle") {
    const auto t = shoot(WeightPair(0, 0));
    CHECK(std::abs(t.length - std::numbers::pi / 2) < 1e-8);
    CHECK(std::abs(t.endpoint_x - 1.0) < 1e-8);
    for (const auto& s : t.states) CHECK(std::abs(std::hypot(s.x, s.y) - 1.0) < 1e-9);
  }

  TEST_CASE("alpha == beta = 1 has the same geometry") {
    const auto t = shoot(WeightPair(1, 1));
    CHECK(std::abs(t.endpoint_x - 1.0) < 1e-8);
    for (const auto& s : t.states) CHECK(std::abs(s.kappa - 1.0) < 1e-12);
  }

  TEST_CASE("endpoint matches the profile base width") {
    const WeightPair w(0, 1);
    const auto t = shoot(w);
    CHECK(std::abs(t.endpoint_x - profile_f(w, 0.0)) < 1e-6);
    CHECK(std::abs(t.endpoint_x - 0.59908) < 1e-5);
  }

  TEST_CASE("first integral residual") {
    CHECK(first_integral_residual(circle_states(100), WeightPair(0, 0)) < 1e-15);
    ShootConfig cfg;
    cfg.step_tol = 1e-10;
    const WeightPair w(0, 1);
    CHECK(first_integral_residual(shoot(w, cfg), w) <= 1e-9);
    auto jittered = circle_states(100);
    for (std::size_t k = 0; k < jittered.states.size(); k += 2) jittered.states[k].y += 1e-3;
    const double r = first_integral_residual(jittered, WeightPair(0, 0));
    CHECK(r > 5e-4);
    CHECK(r < 2e-3);
  }

  TEST_CASE("compare_to_profile") {
    const OptimalProfile circle(WeightPair(0, 0), 512);
    CHECK(compare_to_profile(circle_states(200), circle) <= 1e-9);
    for (const WeightPair& w : {WeightPair(1, 2), WeightPair(0.5, 1)}) {
      const OptimalProfile prof(w, 512);
      CHECK(compare_to_profile(shoot(w), prof) <= 1e-6);
    }
    CHECK(thrown_code([&] { compare_to_profile(shoot(WeightPair(1, 2)), circle); }) == ErrorCode::Domain);
  }

  TEST_CASE("trajectory invariants across the sweep grid") {
    for (const WeightPair& w : sharp_sweep_grid(true)) {
      ShootConfig cfg;
      const auto t = shoot(w, cfg);
      REQUIRE(t.states.size() > 10);
      const auto& first = t.states.front();
      CHECK(first.x == 0.0);
      CHECK(first.y == 1.0);
      CHECK(first.theta == 0.0);
      CHECK(std::cos(first.theta) == 1.0);
      for (std::size_t k = 0; k < t.states.size(); ++k) {
        CHECK(t.states[k].kappa > 0.0);
        if (k > 0) CHECK(t.states[k].y < t.states[k - 1].y);
      }
      const auto& last = t.states.back();
      CHECK(std::abs(std::cos(last.theta)) <= std::pow(cfg.y_stop, w.gamma()) + 10 * cfg.step_tol);
      CHECK(first_integral_residual(t, w) <= 10 * cfg.step_tol);
      CHECK(rel_err(t.weighted_perimeter, optimal_perimeter(w)) < 1e-6);
      CHECK(rel_err(t.weighted_area, optimal_area(w)) < 1e-6);
    }
  }

  TEST_CASE("shoot rejects non-sharp weights and bad tolerances") {
    CHECK(thrown_code([] { shoot(WeightPair(3, 1)); }) == ErrorCode::Region);
    ShootConfig cfg;
    cfg.step_tol = 0.0;
    CHECK(thrown_code([&] { shoot(WeightPair(0, 0), cfg); }) == ErrorCode::Domain);
  }
}
