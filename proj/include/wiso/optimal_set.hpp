#pragma once

#include <vector>

#include "wiso/polygon.hpp"
#include "wiso/special_functions.hpp"
#include "wiso/weights.hpp"

namespace wiso {

/// Half-width f(y) of the optimal set {|x| < f(y), 0 < y < 1}:
/// f(y) = integral from y to 1 of t^g / sqrt(1 - t^(2g)) dt with g = beta + 1 - alpha.
/// Requires gamma > 0 and y in [0, 1]; the set it bounds is the minimizer
/// only for sharp weights.
double profile_f(const WeightPair& w, double y, const QuadratureConfig& cfg = {});

/// Slope f'(y) = -y^g / sqrt(1 - y^(2g)); -infinity at y = 1.
double profile_slope(const WeightPair& w, double y);

/// Sharp constant mu(alpha, beta) from the Beta-function closed form.
double mu_closed_form(const WeightPair& w);

/// mu(alpha, 2 alpha) = sqrt(2 pi (2 alpha + 1) / (alpha + 1)).
double mu_beta_twice_alpha(double alpha);

/// Closed forms P_alpha = B(k, 1/2) / g and A_beta = B(1 + k, 1/2) / (g (beta + 1))
/// of the optimal set, k = (alpha + 1) / (2 g).
double optimal_perimeter(const WeightPair& w);
double optimal_area(const WeightPair& w);

struct OptimalFunctionals {
  double perimeter_closed = 0.0;
  double area_closed = 0.0;
  double perimeter_quadrature = 0.0;
  double area_quadrature = 0.0;

  double ratio_closed(const WeightPair& w) const;
  double ratio_quadrature(const WeightPair& w) const;
};

/// P_alpha and A_beta of the optimal set (y+ = 1), both in closed form and by
/// direct quadrature of 2 int y^alpha (1 - y^(2g))^(-1/2) dy and 2 int y^beta f(y) dy.
OptimalFunctionals optimal_functionals(const WeightPair& w, const QuadratureConfig& cfg = {});

/// The profile f sampled at y_j = sin(pi j / (2n)), j = 0..n (gamma > 0).
///
/// Queries interpolate with cubic Hermite polynomials in the angle
/// theta = asin(y), in which f is smooth up to the apex even though
/// f'(y) blows up there.
class OptimalProfile {
 public:
  OptimalProfile(const WeightPair& w, int n, const QuadratureConfig& cfg = {});

  const WeightPair& weights() const noexcept { return w_; }
  int intervals() const noexcept { return n_; }
  double f0() const noexcept { return f_.front(); }
  const std::vector<double>& ys() const noexcept { return y_; }
  const std::vector<double>& fs() const noexcept { return f_; }

  /// Interpolated f(y) for y in [0, 1].
  double operator()(double y) const;

 private:
  WeightPair w_;
  int n_;
  std::vector<double> y_;
  std::vector<double> f_;
  std::vector<double> dfdtheta_;
};

/// Inscribed polygon of the minimizer on the graded levels of OptimalProfile:
/// vertices (+-f(y_j), y_j), apex (0, 1), closed along y = 0. 2n + 1 vertices.
HalfPlanePolygon sample_optimal_polygon(const WeightPair& w, int n, const QuadratureConfig& cfg = {});
HalfPlanePolygon optimal_polygon_from_profile(const OptimalProfile& prof);

enum class HalfDiskOrdering { Superset, Subset, Equal };

const char* half_disk_ordering_name(HalfDiskOrdering o) noexcept;

struct HalfDiskComparison {
  HalfDiskOrdering ordering;
  /// max over the grid of f(y) - sqrt(1 - y^2) and its minimum.
  double max_excess;
  double min_excess;
};

/// Compares the minimizer with the unit half-disk on a dense y grid.
/// Throws Error(NonConvergence) if the certificate contradicts the sign of beta - alpha.
HalfDiskComparison inclusion_vs_halfdisk(const WeightPair& w, const QuadratureConfig& cfg = {});

}  // namespace wiso
