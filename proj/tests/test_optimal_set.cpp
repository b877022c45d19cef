#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "wiso/geometry.hpp"
#include "wiso/harness.hpp"
#include "wiso/optimal_set.hpp"
#include "wiso/special_functions.hpp"

using namespace wiso;
using wiso::test::rel_err;
using wiso::test::thrown_code;

TEST_SUITE("optimal_set") {
  TEST_CASE("profile_f hand values") {
    CHECK(profile_f(WeightPair(0, 1), 1.0) == 0.0);
    for (double a : {0.0, 1.0, 2.5}) CHECK(std::abs(profile_f(WeightPair(a, a), 0.6) - 0.8) < 1e-12);
    // t^2 / sqrt(1 - t^4) with z = t^4 is a Beta integral.
    CHECK(std::abs(profile_f(WeightPair(0, 1), 0.0) - 0.25 * beta(0.75, 0.5)) < 1e-12);
    CHECK(std::abs(profile_f(WeightPair(0, 1), 0.0) - 0.59908) < 1e-5);
    CHECK(thrown_code([] { profile_f(WeightPair(3, 1), 0.5); }) == ErrorCode::Region);
    CHECK(thrown_code([] { profile_f(WeightPair(0, 0), 1.5); }) == ErrorCode::Domain);
  }

  TEST_CASE("profile_f is the half circle at alpha == beta") {
    for (double a : {0.0, 0.5, 1.0, 3.0})
      for (int k = 0; k <= 200; ++k) {
        const double y = k / 200.0;
        CHECK(std::abs(profile_f(WeightPair(a, a), y) - std::sqrt(1.0 - y * y)) < 1e-10);
      }
  }

  TEST_CASE("profile_f is positive and strictly decreasing") {
    for (const WeightPair& w : sharp_sweep_grid(true)) {
      double prev = profile_f(w, 0.0);
      CHECK(prev > 0.0);
      for (int k = 1; k < 64; ++k) {
        const double f = profile_f(w, k / 64.0);
        CHECK(f > 0.0);
        CHECK(f < prev);
        prev = f;
      }
      CHECK(profile_f(w, 1.0) == 0.0);
    }
  }

  TEST_CASE("profile_f matches the integral of its slope") {
    const WeightPair w(0.5, 1.0);
    const double y0 = 0.2, y1 = 0.7;
    const double h = y1 - y0;
    const double integral = h * integrate_de_checked([&](double s, double) { return profile_slope(w, y0 + h * s); });
    CHECK(std::abs(profile_f(w, y1) - profile_f(w, y0) - integral) < 1e-11);
  }

  TEST_CASE("mu hand values") {
    CHECK(rel_err(mu_closed_form(WeightPair(0, 0)), std::sqrt(2.0 * std::numbers::pi)) < 1e-14);
    CHECK(rel_err(mu_closed_form(WeightPair(1, 2)), std::sqrt(3.0 * std::numbers::pi)) < 1e-14);
    CHECK(rel_err(mu_closed_form(WeightPair(1, 1)), std::cbrt(18.0)) < 1e-14);
    CHECK(thrown_code([] { mu_closed_form(WeightPair(1, 3)); }) == ErrorCode::Region);
  }

  TEST_CASE("mu at beta = 2 alpha") {
    for (int k = 0; k <= 20; ++k) {
      const double a = 0.25 * k;
      const double want = std::sqrt(2.0 * std::numbers::pi * (2.0 * a + 1.0) / (a + 1.0));
      CHECK(rel_err(mu_closed_form(WeightPair(a, 2.0 * a)), want) < 1e-12);
      CHECK(rel_err(mu_beta_twice_alpha(a), want) < 1e-15);
    }
  }

  TEST_CASE("mu is continuous as beta approaches 2 alpha") {
    for (double a : {0.5, 1.0, 2.0}) {
      const double edge = mu_closed_form(WeightPair(a, 2 * a));
      double prev = 1e9;
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double gap = std::abs(mu_closed_form(WeightPair(a, 2 * a - eps)) - edge);
        CHECK(gap < prev);
        prev = gap;
      }
      CHECK(prev < 1e-5);
    }
  }

  TEST_CASE("optimal functionals hand values") {
    const auto f0 = optimal_functionals(WeightPair(0, 0));
    CHECK(rel_err(f0.perimeter_closed, std::numbers::pi) < 1e-14);
    CHECK(rel_err(f0.area_closed, std::numbers::pi / 2) < 1e-14);
    const auto f1 = optimal_functionals(WeightPair(1, 1));
    CHECK(rel_err(f1.perimeter_closed, 2.0) < 1e-14);
    CHECK(rel_err(f1.area_closed, 2.0 / 3.0) < 1e-14);
    CHECK(rel_err(f1.ratio_closed(WeightPair(1, 1)), mu_closed_form(WeightPair(1, 1))) < 1e-14);
  }

  TEST_CASE("optimal functionals: quadrature against closed form") {
    for (const WeightPair& w : sharp_sweep_grid(true)) {
      const auto f = optimal_functionals(w);
      CHECK(rel_err(f.perimeter_quadrature, f.perimeter_closed) < 1e-9);
      CHECK(rel_err(f.area_quadrature, f.area_closed) < 1e-9);
      CHECK(rel_err(f.ratio_quadrature(w), mu_closed_form(w)) < 1e-9);
      CHECK(rel_err(f.ratio_closed(w), mu_closed_form(w)) < 1e-13);
    }
  }

  TEST_CASE("optimal set functionals follow the scaling laws") {
    const WeightPair w(0.5, 0.75);
    const auto base = optimal_polygon_from_profile(OptimalProfile(w, 256));
    const double t = 1.7;
    const auto big = scale(base, t);
    CHECK(rel_err(weighted_perimeter(big, w), std::pow(t, w.alpha() + 1) * weighted_perimeter(base, w)) < 1e-13);
    CHECK(rel_err(weighted_area(big, w), std::pow(t, w.beta() + 2) * weighted_area(base, w)) < 1e-13);
  }

  TEST_CASE("OptimalProfile samples and interpolation") {
    const WeightPair w(1, 2);
    const OptimalProfile prof(w, 128);
    CHECK(prof.intervals() == 128);
    CHECK(prof.ys().size() == 129);
    CHECK(prof.ys().front() == 0.0);
    CHECK(prof.ys().back() == 1.0);
    CHECK(prof.fs().back() == 0.0);
    CHECK(rel_err(prof.f0(), profile_f(w, 0.0)) < 1e-13);
    double worst = 0.0;
    for (int k = 0; k <= 997; ++k) {
      const double y = k / 997.0;
      worst = std::max(worst, std::abs(prof(y) - profile_f(w, y)));
    }
    CHECK(worst < 1e-8);
    CHECK(thrown_code([&] { OptimalProfile(w, 4); }) == ErrorCode::Domain);
    CHECK(thrown_code([] { OptimalProfile(WeightPair(3, 1), 64); }) == ErrorCode::Region);
  }

  TEST_CASE("sampled polygon: shape, bound and symmetry") {
    const WeightPair w(0, 0);
    const auto poly = sample_optimal_polygon(w, 64);
    CHECK(poly.vertex_count() == 2 * 64 + 1);
    CHECK(steiner_symmetrize(poly) == poly);
    const double r512 = isoperimetric_ratio(sample_optimal_polygon(w, 512), w);
    const double r2048 = isoperimetric_ratio(sample_optimal_polygon(w, 2048), w);
    CHECK(r512 >= r2048);
    CHECK(r2048 >= mu_closed_form(w));
    CHECK(r2048 - mu_closed_form(w) < 1e-5);
    CHECK(thrown_code([&] { sample_optimal_polygon(w, 7); }) == ErrorCode::Domain);
  }

  TEST_CASE("sampled polygons respect mu across the sweep grid") {
    for (const WeightPair& w : sharp_sweep_grid(true)) {
      const double mu = mu_closed_form(w);
      double prev = 1e9;
      for (int n : {16, 64, 256}) {
        const double r = isoperimetric_ratio(sample_optimal_polygon(w, n), w);
        CHECK(r >= mu);
        CHECK(r < prev);
        prev = r;
      }
    }
  }

  TEST_CASE("inclusion against the unit half-disk") {
    CHECK(inclusion_vs_halfdisk(WeightPair(1, 1)).ordering == HalfDiskOrdering::Equal);
    CHECK(inclusion_vs_halfdisk(WeightPair(1, 2)).ordering == HalfDiskOrdering::Subset);
    CHECK(inclusion_vs_halfdisk(WeightPair(1, 0.5)).ordering == HalfDiskOrdering::Superset);
    const auto eq = inclusion_vs_halfdisk(WeightPair(0, 0));
    CHECK(std::max(std::abs(eq.max_excess), std::abs(eq.min_excess)) <= 1e-9);
    CHECK(std::string(half_disk_ordering_name(HalfDiskOrdering::Subset)) == "SUBSET");
  }
}
