#include "wiso/weights.hpp"

#include <cmath>
#include <sstream>

#include "wiso/error.hpp"

namespace wiso {

std::string_view weight_class_name(WeightClass c) noexcept {
  switch (c) {
    case WeightClass::Sharp: return "SHARP";
    case WeightClass::DegenerateZero: return "DEGENERATE_ZERO";
    case WeightClass::BoundaryNoMin: return "BOUNDARY_NO_MIN";
    case WeightClass::Unclassified: return "UNCLASSIFIED";
  }
  return "UNCLASSIFIED";
}

WeightPair::WeightPair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw Error(ErrorCode::Domain, "weight exponents must be finite");
  if (alpha < 0.0) throw Error(ErrorCode::Domain, "weight pair violates alpha >= 0");
  if (!(beta > -1.0)) throw Error(ErrorCode::Domain, "weight pair violates beta > -1");
}

WeightClass WeightPair::classify() const noexcept {
  const double b1 = beta_ + 1.0;
  if (alpha_ < b1 && beta_ <= 2.0 * alpha_) return WeightClass::Sharp;
  if (alpha_ == b1) return WeightClass::BoundaryNoMin;
  if (alpha_ > b1 || 2.0 * alpha_ < beta_) return WeightClass::DegenerateZero;
  return WeightClass::Unclassified;
}

std::string WeightPair::sharp_violation() const {
  if (!(alpha_ < beta_ + 1.0)) return "alpha < beta+1";
  if (!(beta_ <= 2.0 * alpha_)) return "beta <= 2*alpha";
  return {};
}

void WeightPair::require_sharp() const {
  const std::string v = sharp_violation();
  if (v.empty()) return;
  std::ostringstream os;
  os << "weights (alpha=" << alpha_ << ", beta=" << beta_ << ") violate " << v;
  throw Error(ErrorCode::Region, os.str());
}

void WeightPair::require_positive_gamma() const {
  if (alpha_ < beta_ + 1.0) return;
  std::ostringstream os;
  os << "weights (alpha=" << alpha_ << ", beta=" << beta_ << ") violate alpha < beta+1";
  throw Error(ErrorCode::Region, os.str());
}

}  // namespace wiso
