#pragma once

#include <cstddef>
#include <functional>

namespace wiso {

/// Settings for the tanh-sinh rule on (0, 1).
///
/// Level k splits the truncated transform interval into 2^k panels, so a
/// full run to level k costs 2^k + 1 integrand evaluations.
struct QuadratureConfig {
  int level = 10;
  double abs_tol = 1e-12;
  std::size_t max_evals = 4096;

  /// Throws Error(Domain) unless level in [3, 12], abs_tol > 0 and
  /// max_evals >= 2^level.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  int level_reached = 0;
  bool converged = false;
};

/// Integrand on (0, 1). The second argument is 1 - x computed without
/// cancellation; integrands with a singularity at x = 1 should use it.
using UnitIntegrand = std::function<double(double x, double one_minus_x)>;

/// ln Gamma(x) for x > 0.
///
/// Lanczos series with g = 607/128 and 15 terms (the Godfrey coefficient
/// set). Against std::lgamma the relative error stays below 3e-15 on
/// [0.5, 100] away from the zeros at 1 and 2, where the absolute error is
/// below 1e-15. Arguments below 0.5 are shifted up with Gamma(x+1) = x Gamma(x).
double log_gamma(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

/// Double-exponential quadrature of f over (0, 1), refining level by level
/// until two successive estimates differ by at most cfg.abs_tol. Endpoint
/// singularities of integrable power type are handled without special care.
/// A NaN or infinite sample raises Error(NonConvergence); running out of
/// levels or evaluations returns with converged == false.
QuadratureResult integrate_de(const UnitIntegrand& f, const QuadratureConfig& cfg = {});

/// Convenience overload for integrands that do not need the complement.
QuadratureResult integrate_de(const std::function<double(double)>& f,
                              const QuadratureConfig& cfg = {});

/// Like integrate_de but throws Error(NonConvergence) when not converged.
double integrate_de_checked(const UnitIntegrand& f, const QuadratureConfig& cfg = {});

/// Mean of y^q over the segment [y1, y2] (order irrelevant), i.e.
/// (y2^{q+1} - y1^{q+1}) / ((q+1)(y2 - y1)), evaluated without cancellation
/// when y1 and y2 are close. Requires y1, y2 >= 0 and q > -1.
double mean_power(double y1, double y2, double q);

}  // namespace wiso
