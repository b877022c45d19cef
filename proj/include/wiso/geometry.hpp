#pragma once

#include <cstddef>
#include <vector>

#include "wiso/polygon.hpp"
#include "wiso/weights.hpp"

namespace wiso {

/// Horizontal section lengths l(y) of a polygon.
///
/// Between consecutive critical levels l is linear, so each band stores its
/// two one-sided end values. At a level where a horizontal edge sits, the
/// band below and the band above generally disagree (a jump).
struct SliceProfile {
  std::vector<double> levels;       // strictly increasing vertex ordinates
  std::vector<double> band_bottom;  // l just above levels[k]
  std::vector<double> band_top;     // l just below levels[k+1]

  std::size_t band_count() const noexcept { return band_bottom.size(); }
  /// Lowest / highest level with positive section length nearby.
  double y_minus() const;
  double y_plus() const;
  /// l(y), right-continuous at interior levels; zero outside [levels.front(), levels.back()].
  double length(double y) const;
};

/// A_beta = integral of y^beta over the polygon, summed edge by edge from the
/// boundary form -contour integral of y^{beta+1}/(beta+1) dx.
double weighted_area(const HalfPlanePolygon& poly, const WeightPair& w);

/// P_alpha = integral of y^alpha along the boundary, skipping edges on y = 0.
double weighted_perimeter(const HalfPlanePolygon& poly, const WeightPair& w);

/// P_alpha / A_beta^((alpha+1)/(beta+2)). Throws Error(Domain) on zero area.
double isoperimetric_ratio(const HalfPlanePolygon& poly, const WeightPair& w);

/// Dilation about the origin by t > 0.
HalfPlanePolygon scale(const HalfPlanePolygon& poly, double t);

/// Horizontal shift by dx. P and A are invariant.
HalfPlanePolygon translate_x(const HalfPlanePolygon& poly, double dx);

SliceProfile slice_profile(const HalfPlanePolygon& poly);

/// Steiner symmetrization about the y-axis: every horizontal section is
/// replaced by the centred interval of equal length. Bands where the section
/// vanishes split the output into separate loops.
HalfPlanePolygon steiner_symmetrize(const HalfPlanePolygon& poly);

}  // namespace wiso
