#pragma once

#include <cstddef>
#include <vector>

namespace wiso {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed polygonal region in the closed upper half-plane, stored as one or
/// more disjoint simple loops. Each loop is counter-clockwise and implicitly
/// closed (the last vertex connects back to the first).
class HalfPlanePolygon {
 public:
  using Loop = std::vector<Point>;

  HalfPlanePolygon() = default;

  /// Validates every invariant and throws Error(InvalidPolygon) on the first
  /// failure: fewer than 3 vertices, non-finite or negative y, repeated
  /// consecutive vertex, non-positive signed area, self-intersection,
  /// intersecting or nested loops.
  static HalfPlanePolygon from_loops(std::vector<Loop> loops);
  static HalfPlanePolygon from_vertices(Loop vertices);

  /// Skips validation. For constructions that are valid by design.
  static HalfPlanePolygon trusted(std::vector<Loop> loops);

  /// Axis-aligned box (x0, x1) x (y0, y1), counter-clockwise from (x0, y0).
  static HalfPlanePolygon rectangle(double x0, double x1, double y0, double y1);

  const std::vector<Loop>& loops() const noexcept { return loops_; }
  std::size_t vertex_count() const noexcept;
  bool empty() const noexcept { return loops_.empty(); }

  friend bool operator==(const HalfPlanePolygon&, const HalfPlanePolygon&) = default;

 private:
  explicit HalfPlanePolygon(std::vector<Loop> loops) : loops_(std::move(loops)) {}
  std::vector<Loop> loops_;
};

/// Shoelace signed area of a single loop (positive when counter-clockwise).
double signed_area(const HalfPlanePolygon::Loop& loop);

/// Throws Error(InvalidPolygon) describing the first violated invariant.
void validate_loops(const std::vector<HalfPlanePolygon::Loop>& loops);

/// True when the closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(Point a, Point b, Point c, Point d);

/// Even-odd containment test for a point strictly off the loop boundary.
bool point_in_loop(Point p, const HalfPlanePolygon::Loop& loop);

}  // namespace wiso
