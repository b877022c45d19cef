#include "wiso/optimal_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wiso/error.hpp"

namespace wiso {

namespace {

// 1 - t^(2g) given c = 1 - t, accurate for t near 1.
double one_minus_power(double c, double two_g) { return -std::expm1(two_g * std::log1p(-c)); }

// f(y) with the complement yc = 1 - y supplied exactly. The integral over
// (y, 1) is mapped to (0, 1) by t = y + yc s, so 1 - t = yc (1 - s).
double profile_with_complement(double g, double y, double yc, const QuadratureConfig& cfg) {
  if (yc <= 0.0) return 0.0;
  // yc t^g / sqrt(1 - t^(2g)) = sqrt(yc) t^g / sqrt(sc q(c)), q(c) = (1 - t^(2g)) / c,
  // which stays finite when c = yc sc underflows.
  const double root_yc = std::sqrt(yc);
  const UnitIntegrand integrand = [&](double s, double sc) {
    const double c = yc * sc;
    const double t = y + yc * s;
    const double q = (c < 1e-300) ? 2.0 * g : one_minus_power(c, 2.0 * g) / c;
    return root_yc * std::pow(t, g) / std::sqrt(sc * q);
  };
  // The scale factor stays inside so that abs_tol bounds the error in f itself.
  return integrate_de_checked(integrand, cfg);
}

// Complement 1 - sin(theta) without cancellation near theta = pi/2.
double one_minus_sin(double theta) {
  const double s = std::sin(0.25 * std::numbers::pi - 0.5 * theta);
  return 2.0 * s * s;
}

void check_y(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw Error(ErrorCode::Domain, "profile argument must lie in [0, 1]");
}

}  // namespace

double profile_f(const WeightPair& w, double y, const QuadratureConfig& cfg) {
  w.require_positive_gamma();
  check_y(y);
  return profile_with_complement(w.gamma(), y, 1.0 - y, cfg);
}

double profile_slope(const WeightPair& w, double y) {
  w.require_positive_gamma();
  check_y(y);
  if (y == 1.0) return -std::numeric_limits<double>::infinity();
  const double g = w.gamma();
  return -std::pow(y, g) / std::sqrt(one_minus_power(1.0 - y, 2.0 * g));
}

double mu_closed_form(const WeightPair& w) {
  w.require_sharp();
  const double a = w.alpha();
  const double b = w.beta();
  const double g = w.gamma();
  const double e = w.area_exponent();
  return std::pow(g, e - 1.0) * std::pow((b + 1.0) * (b + 2.0) / (a + 1.0), e) *
         std::pow(beta((a + 1.0) / (2.0 * g), 0.5), g / (b + 2.0));
}

double mu_beta_twice_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::Domain, "alpha must be non-negative");
  return std::sqrt(2.0 * std::numbers::pi * (2.0 * alpha + 1.0) / (alpha + 1.0));
}

double optimal_perimeter(const WeightPair& w) {
  w.require_sharp();
  const double g = w.gamma();
  return beta((w.alpha() + 1.0) / (2.0 * g), 0.5) / g;
}

double optimal_area(const WeightPair& w) {
  w.require_sharp();
  const double g = w.gamma();
  return beta(1.0 + (w.alpha() + 1.0) / (2.0 * g), 0.5) / (g * (w.beta() + 1.0));
}

double OptimalFunctionals::ratio_closed(const WeightPair& w) const {
  return perimeter_closed / std::pow(area_closed, w.area_exponent());
}

double OptimalFunctionals::ratio_quadrature(const WeightPair& w) const {
  return perimeter_quadrature / std::pow(area_quadrature, w.area_exponent());
}

OptimalFunctionals optimal_functionals(const WeightPair& w, const QuadratureConfig& cfg) {
  w.require_sharp();
  const double a = w.alpha();
  const double b = w.beta();
  const double g = w.gamma();

  OptimalFunctionals out;
  out.perimeter_closed = optimal_perimeter(w);
  out.area_closed = optimal_area(w);

  out.perimeter_quadrature =
      2.0 * integrate_de_checked(
                [&](double y, double yc) { return std::pow(y, a) / std::sqrt(one_minus_power(yc, 2.0 * g)); },
                cfg);
  out.area_quadrature =
      2.0 * integrate_de_checked(
                [&](double y, double yc) { return std::pow(y, b) * profile_with_complement(g, y, yc, cfg); }, cfg);
  return out;
}

OptimalProfile::OptimalProfile(const WeightPair& w, int n, const QuadratureConfig& cfg) : w_(w), n_(n) {
  w.require_positive_gamma();
  if (n < 8) throw Error(ErrorCode::Domain, "optimal profile needs at least 8 intervals");
  const double g = w.gamma();
  const double step = 0.5 * std::numbers::pi / n;
  y_.resize(n + 1);
  f_.resize(n + 1);
  dfdtheta_.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double theta = j * step;
    const double y = (j == n) ? 1.0 : std::sin(theta);
    const double yc = (j == n) ? 0.0 : one_minus_sin(theta);
    y_[j] = y;
    f_[j] = profile_with_complement(g, y, yc, cfg);
    // df/dtheta = f'(y) cos(theta); tends to -1/sqrt(g) at the apex.
    dfdtheta_[j] = (j == n) ? -1.0 / std::sqrt(g)
                            : -std::pow(y, g) * std::cos(theta) / std::sqrt(one_minus_power(yc, 2.0 * g));
  }
}

double OptimalProfile::operator()(double y) const {
  check_y(y);
  const double step = 0.5 * std::numbers::pi / n_;
  const double theta = std::asin(y);
  int j = static_cast<int>(theta / step);
  j = std::clamp(j, 0, n_ - 1);
  const double t = (theta - j * step) / step;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * f_[j] + h10 * step * dfdtheta_[j] + h01 * f_[j + 1] + h11 * step * dfdtheta_[j + 1];
}

HalfPlanePolygon optimal_polygon_from_profile(const OptimalProfile& prof) {
  const auto& y = prof.ys();
  const auto& f = prof.fs();
  const int n = prof.intervals();
  HalfPlanePolygon::Loop loop;
  loop.reserve(2 * n + 1);
  loop.push_back({-f[0], 0.0});
  for (int j = 0; j < n; ++j) loop.push_back({f[j], y[j]});
  loop.push_back({0.0, 1.0});
  for (int j = n - 1; j >= 1; --j) loop.push_back({-f[j], y[j]});
  return HalfPlanePolygon::trusted({std::move(loop)});
}

HalfPlanePolygon sample_optimal_polygon(const WeightPair& w, int n, const QuadratureConfig& cfg) {
  return optimal_polygon_from_profile(OptimalProfile(w, n, cfg));
}

const char* half_disk_ordering_name(HalfDiskOrdering o) noexcept {
  switch (o) {
    case HalfDiskOrdering::Superset: return "SUPERSET";
    case HalfDiskOrdering::Subset: return "SUBSET";
    case HalfDiskOrdering::Equal: return "EQUAL";
  }
  return "?";
}

HalfDiskComparison inclusion_vs_halfdisk(const WeightPair& w, const QuadratureConfig& cfg) {
  w.require_sharp();
  constexpr int kGrid = 512;
  const double g = w.gamma();
  HalfDiskComparison cmp{HalfDiskOrdering::Equal, -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
  for (int j = 0; j <= kGrid; ++j) {
    const double theta = 0.5 * std::numbers::pi * j / kGrid;
    const double y = (j == kGrid) ? 1.0 : std::sin(theta);
    const double yc = (j == kGrid) ? 0.0 : one_minus_sin(theta);
    const double excess = profile_with_complement(g, y, yc, cfg) - ((j == kGrid) ? 0.0 : std::cos(theta));
    cmp.max_excess = std::max(cmp.max_excess, excess);
    cmp.min_excess = std::min(cmp.min_excess, excess);
  }
  constexpr double kRoundoff = 1e-12;
  const double d = w.beta() - w.alpha();
  if (d == 0.0) {
    if (std::max(cmp.max_excess, -cmp.min_excess) > 1e-9)
      throw Error(ErrorCode::NonConvergence, "profile deviates from the half-disk at beta == alpha");
    cmp.ordering = HalfDiskOrdering::Equal;
  } else if (d < 0.0) {
    if (cmp.min_excess < -kRoundoff)
      throw Error(ErrorCode::NonConvergence, "profile dips inside the half-disk although beta < alpha");
    cmp.ordering = HalfDiskOrdering::Superset;
  } else {
    if (cmp.max_excess > kRoundoff)
      throw Error(ErrorCode::NonConvergence, "profile leaves the half-disk although beta > alpha");
    cmp.ordering = HalfDiskOrdering::Subset;
  }
  return cmp;
}

}  // namespace wiso
