#pragma once

#include <string>
#include <string_view>

namespace wiso {

/// Which regime a monomial weight pair falls into.
enum class WeightClass {
  Sharp,           // 0 <= alpha < beta + 1 and beta <= 2 alpha: minimizer exists
  DegenerateZero,  // alpha > beta + 1 or 2 alpha < beta: infimum is 0
  BoundaryNoMin,   // alpha == beta + 1: infimum beta + 1, never attained
  Unclassified,    // unreachable once alpha >= 0 and beta > -1 hold
};

std::string_view weight_class_name(WeightClass c) noexcept;

/// Exponent pair (alpha, beta): perimeter weight y^alpha, area weight y^beta.
class WeightPair {
 public:
  /// Throws Error(Domain) unless alpha >= 0, beta > -1 and both are finite.
  WeightPair(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// gamma = beta + 1 - alpha, positive exactly when alpha < beta + 1.
  double gamma() const noexcept { return beta_ + 1.0 - alpha_; }
  /// Exponent (alpha + 1) / (beta + 2) applied to the area in the ratio.
  double area_exponent() const noexcept { return (alpha_ + 1.0) / (beta_ + 2.0); }

  WeightClass classify() const noexcept;
  bool is_sharp() const noexcept { return classify() == WeightClass::Sharp; }

  /// Empty when sharp, otherwise the first violated inequality, e.g. "alpha < beta+1".
  std::string sharp_violation() const;

  /// Throws Error(Region) naming the violated inequality unless sharp.
  void require_sharp() const;

  /// Throws Error(Region) unless alpha < beta + 1 (gamma > 0): the range in
  /// which the profile integral and the extremal flow are defined, whether or
  /// not they bound a minimizer.
  void require_positive_gamma() const;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;

 private:
  double alpha_;
  double beta_;
};

}  // namespace wiso
