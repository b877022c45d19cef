#include <cmath>
#include <limits>
#include <numbers>

#include "test_util.hpp"
#include "wiso/special_functions.hpp"

using namespace wiso;
using wiso::test::rel_err;
using wiso::test::thrown_code;

TEST_SUITE("special_functions") {
  TEST_CASE("log_gamma hand values") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
    CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-14);
    CHECK(rel_err(log_gamma(5.0), std::log(24.0)) < 1e-14);
  }

  TEST_CASE("log_gamma tracks std::lgamma on [0.5, 100]") {
    double worst_rel = 0.0, worst_abs = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = 0.5 + 99.5 * i / 4000.0;
      const double want = std::lgamma(x);
      const double got = log_gamma(x);
      if (std::abs(want) > 0.1) worst_rel = std::max(worst_rel, rel_err(got, want));
      else worst_abs = std::max(worst_abs, std::abs(got - want));
    }
    CHECK(worst_rel < 1e-13);
    CHECK(worst_abs < 1e-14);
  }

  TEST_CASE("log_gamma small arguments use the recurrence") {
    for (double x : {1e-6, 0.01, 0.1, 0.3, 0.49})
      CHECK(rel_err(log_gamma(x), std::lgamma(x)) < 1e-13);
  }

  TEST_CASE("log_gamma rejects its domain") {
    CHECK(thrown_code([] { log_gamma(0.0); }) == ErrorCode::Domain);
    CHECK(thrown_code([] { log_gamma(-1.5); }) == ErrorCode::Domain);
    CHECK(thrown_code([] { log_gamma(std::numeric_limits<double>::quiet_NaN()); }) == ErrorCode::Domain);
    CHECK(thrown_code([] { log_gamma(std::numeric_limits<double>::infinity()); }) == ErrorCode::Domain);
  }

  TEST_CASE("beta hand values") {
    CHECK(rel_err(beta(1.0, 1.0), 1.0) < 1e-14);
    CHECK(rel_err(beta(0.5, 0.5), std::numbers::pi) < 1e-14);
    // Gamma(3/2) Gamma(1/2) / Gamma(2) from std::tgamma.
    CHECK(rel_err(beta(1.5, 0.5), std::tgamma(1.5) * std::tgamma(0.5) / std::tgamma(2.0)) < 1e-14);
    CHECK(thrown_code([] { beta(0.0, 1.0); }) == ErrorCode::Domain);
    CHECK(thrown_code([] { beta(1.0, -2.0); }) == ErrorCode::Domain);
  }

  TEST_CASE("beta symmetry and recurrence on a grid") {
    double worst_sym = 0.0, worst_rec = 0.0;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) {
        const double a = 0.1 + 19.9 * i / 39.0;
        const double b = 0.1 + 19.9 * j / 39.0;
        const double bab = beta(a, b);
        worst_sym = std::max(worst_sym, rel_err(beta(b, a), bab));
        worst_rec = std::max(worst_rec, rel_err(beta(a + 1.0, b) * (a + b), bab * a));
      }
    CHECK(worst_sym < 1e-13);
    CHECK(worst_rec < 1e-12);
  }

  TEST_CASE("integrate_de hand integrals") {
    const auto r1 = integrate_de([](double, double c) { return 1.0 / std::sqrt(c); });
    CHECK(r1.converged);
    CHECK(std::abs(r1.value - 2.0) < 1e-12);

    const auto r2 = integrate_de([](double t, double c) { return t / std::sqrt(c * (1.0 + t)); });
    CHECK(std::abs(r2.value - 1.0) < 1e-12);

    const auto r3 = integrate_de([](double t, double c) { return std::pow(t, -0.25) / std::sqrt(c); });
    CHECK(std::abs(r3.value - beta(0.75, 0.5)) < 1e-12);
    CHECK(std::abs(r3.value - 2.3963) < 1e-4);
  }

  TEST_CASE("integrate_de reproduces the Euler integral of beta") {
    QuadratureConfig cfg;
    for (double a = 0.3; a <= 5.0; a += 0.47)
      for (double b = 0.3; b <= 5.0; b += 0.47) {
        const auto r = integrate_de(
            [a, b](double t, double c) { return std::pow(t, a - 1.0) * std::pow(c, b - 1.0); }, cfg);
        CHECK(r.converged);
        CHECK(std::abs(r.value - beta(a, b)) <= cfg.abs_tol * 10.0);
      }
  }

  TEST_CASE("integrate_de reports non-finite samples") {
    const UnitIntegrand bad = [](double t, double) { return t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : t; };
    CHECK(thrown_code([&] { integrate_de(bad); }) == ErrorCode::NonConvergence);
  }

  TEST_CASE("integrate_de flags an exhausted budget") {
    QuadratureConfig cfg;
    cfg.level = 3;
    cfg.max_evals = 8;
    cfg.abs_tol = 1e-300;
    const auto r = integrate_de([](double t) { return std::sin(40.0 * t); }, cfg);
    CHECK_FALSE(r.converged);
    CHECK(thrown_code([&] { integrate_de_checked([](double t, double) { return std::sin(40.0 * t); }, cfg); }) ==
          ErrorCode::NonConvergence);
  }

  TEST_CASE("QuadratureConfig validation") {
    QuadratureConfig ok;
    CHECK_NOTHROW(ok.validate());
    QuadratureConfig low = ok;
    low.level = 2;
    CHECK(thrown_code([&] { low.validate(); }) == ErrorCode::Domain);
    QuadratureConfig high = ok;
    high.level = 13;
    CHECK(thrown_code([&] { high.validate(); }) == ErrorCode::Domain);
    QuadratureConfig tol = ok;
    tol.abs_tol = 0.0;
    CHECK(thrown_code([&] { tol.validate(); }) == ErrorCode::Domain);
    QuadratureConfig evals = ok;
    evals.max_evals = 1000;
    CHECK(thrown_code([&] { evals.validate(); }) == ErrorCode::Domain);
  }

  TEST_CASE("mean_power matches the difference quotient and its limit") {
    for (double q : {0.0, 0.5, 1.0, 2.5, -0.5}) {
      const double y1 = 0.3, y2 = 1.7;
      const double want = (std::pow(y2, q + 1) - std::pow(y1, q + 1)) / ((q + 1) * (y2 - y1));
      CHECK(rel_err(mean_power(y1, y2, q), want) < 1e-14);
      CHECK(rel_err(mean_power(y2, y1, q), want) < 1e-14);
      CHECK(rel_err(mean_power(0.8, 0.8 + 1e-13, q), std::pow(0.8, q)) < 1e-12);
      CHECK(rel_err(mean_power(0.8, 0.8, q), std::pow(0.8, q)) < 1e-15);
    }
  }
}
