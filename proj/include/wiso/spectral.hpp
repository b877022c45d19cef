#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wiso/polygon.hpp"
#include "wiso/weights.hpp"

namespace wiso {

/// Exponents of the weighted p-Laplacian problem: gradient weight
/// y^(p gamma1), mass weight y^(p gamma2 / (p - 1)).
struct EigenParams {
  double p = 2.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Empty when (gamma1, gamma2) lies in the admissible region, otherwise the
/// first violated inequality, e.g. "gamma1+gamma2 >= 0". Throws
/// Error(Domain) when p <= 1 or a value is not finite.
std::string region_violation(const EigenParams& ep);
bool in_region(const EigenParams& ep);

/// alpha = gamma1 + gamma2, beta = p gamma2 / (p - 1). Throws Error(Domain)
/// when p <= 1 or the image is not a valid weight pair (alpha < 0 or beta <= -1).
WeightPair param_map(const EigenParams& ep);

/// Inverse map for a given p: gamma2 = (p - 1) beta / p, gamma1 = alpha - gamma2.
EigenParams inverse_param_map(const WeightPair& w, double p);

struct CheegerBound {
  WeightPair w{0.0, 0.0};
  double target_area = 0.0;
  double t_match = 0.0;  // A_beta(t_match * optimal set) == target_area
  double h = 0.0;        // P/A of the matched optimal set
};

/// Lower bound on the Cheeger constant of any domain with weighted area
/// target_area: h = mu * target_area^((alpha+1)/(beta+2) - 1).
/// Throws Error(Region) for non-sharp weights, Error(Domain) if target_area <= 0.
CheegerBound cheeger_lower_bound(const WeightPair& w, double target_area);

/// P_alpha(E) / A_beta(E) for a subset candidate E. Throws Error(Domain) if
/// E has zero area or more weighted area than the bound was matched to.
double subset_ratio_check(const HalfPlanePolygon& e, const CheegerBound& bound);

/// (h / p)^p with h from the Cheeger bound of param_map(ep).
/// Throws Error(Region) naming the violated inequality outside the region.
double eigenvalue_lower_bound(const EigenParams& ep, double target_area);

/// Samples u(x0 + i*spacing, y0 + j*spacing) on an nx by ny lattice, stored
/// row-major (values[j*nx + i]). Each sample stands for the square cell
/// centred on it. The function is taken to vanish outside the lattice.
///
/// y0 must be positive. When y0 == spacing / 2 the bottom cells rest on the
/// axis; that edge is then free (no zero condition below the first row),
/// matching the relative perimeter, which ignores the axis.
class GridFunction {
 public:
  /// Throws Error(Domain) for nx, ny < 3, non-positive spacing or y0, a
  /// value count other than nx*ny, or non-finite entries.
  GridFunction(std::size_t nx, std::size_t ny, double spacing, double x0, double y0, std::vector<double> values);

  /// Zero-filled lattice.
  static GridFunction zeros(std::size_t nx, std::size_t ny, double spacing, double x0, double y0);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double spacing() const noexcept { return h_; }
  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }
  double x(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * h_; }
  double y(std::size_t j) const noexcept { return y0_ + static_cast<double>(j) * h_; }
  bool abuts_axis() const noexcept;

  double& at(std::size_t i, std::size_t j) { return values_[j * nx_ + i]; }
  double at(std::size_t i, std::size_t j) const { return values_[j * nx_ + i]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Largest |u| on the outer ring of the lattice, excluding the bottom row
  /// when the grid abuts the axis.
  double rim_max() const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double h_;
  double x0_;
  double y0_;
  std::vector<double> values_;
};

/// Discrete Rayleigh quotient
///   sum |grad u|^p y^(p gamma1) / sum |u|^p y^(p gamma2/(p-1))
/// with central differences inside the lattice, one-sided ones on its edge,
/// and weights at the sample heights. Throws Error(Domain) for p <= 1 or a
/// zero denominator.
double rayleigh_quotient(const GridFunction& u, const EigenParams& ep);

struct SobolevSides {
  double lhs = 0.0;  // sum |grad u| y^alpha dA
  double rhs = 0.0;  // mu * (sum |u|^q y^beta dA)^(1/q), q = (beta+2)/(alpha+1)
};

/// Both sides of the weighted Sobolev inequality on u. Throws Error(Region)
/// for non-sharp weights and Error(Domain) if u does not vanish on the rim.
SobolevSides sobolev_check(const GridFunction& u, const WeightPair& w);

}  // namespace wiso
