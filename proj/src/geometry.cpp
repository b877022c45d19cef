#include "wiso/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wiso/error.hpp"
#include "wiso/special_functions.hpp"

namespace wiso {

namespace {

// Non-horizontal edge oriented bottom to top. sign = +1 when the loop walks
// it upward (right boundary of a counter-clockwise loop), -1 otherwise.
struct SlopedEdge {
  Point lo;
  Point hi;
  double sign;

  double x_at(double y) const {
    if (y == lo.y) return lo.x;
    if (y == hi.y) return hi.x;
    return lo.x + (hi.x - lo.x) * ((y - lo.y) / (hi.y - lo.y));
  }
};

template <class F>
void for_each_edge(const HalfPlanePolygon& poly, F&& f) {
  for (const auto& loop : poly.loops()) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) f(loop[i], loop[(i + 1) % n]);
  }
}

}  // namespace

double SliceProfile::y_minus() const {
  for (std::size_t k = 0; k < band_count(); ++k)
    if (band_bottom[k] > 0.0 || band_top[k] > 0.0) return levels[k];
  throw Error(ErrorCode::InvalidPolygon, "slice profile is empty");
}

double SliceProfile::y_plus() const {
  for (std::size_t k = band_count(); k-- > 0;)
    if (band_bottom[k] > 0.0 || band_top[k] > 0.0) return levels[k + 1];
  throw Error(ErrorCode::InvalidPolygon, "slice profile is empty");
}

double SliceProfile::length(double y) const {
  if (band_count() == 0 || y < levels.front() || y > levels.back()) return 0.0;
  auto it = std::upper_bound(levels.begin(), levels.end(), y);
  std::size_t k = static_cast<std::size_t>(it - levels.begin());
  k = (k == 0) ? 0 : k - 1;
  if (k >= band_count()) k = band_count() - 1;
  const double y0 = levels[k];
  const double y1 = levels[k + 1];
  if (y == y0) return band_bottom[k];
  if (y == y1) return band_top[k];
  const double s = (y - y0) / (y1 - y0);
  return band_bottom[k] + s * (band_top[k] - band_bottom[k]);
}

double weighted_area(const HalfPlanePolygon& poly, const WeightPair& w) {
  const double q = w.beta() + 1.0;
  double sum = 0.0;
  for_each_edge(poly, [&](Point a, Point b) {
    const double dx = b.x - a.x;
    if (dx == 0.0) return;
    sum -= dx * mean_power(a.y, b.y, q);
  });
  const double area = sum / q;
  if (!std::isfinite(area)) throw Error(ErrorCode::Domain, "weighted area is not finite");
  return area;
}

double weighted_perimeter(const HalfPlanePolygon& poly, const WeightPair& w) {
  double sum = 0.0;
  for_each_edge(poly, [&](Point a, Point b) {
    if (a.y == 0.0 && b.y == 0.0) return;
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    sum += len * mean_power(a.y, b.y, w.alpha());
  });
  if (!std::isfinite(sum)) throw Error(ErrorCode::Domain, "weighted perimeter is not finite");
  return sum;
}

double isoperimetric_ratio(const HalfPlanePolygon& poly, const WeightPair& w) {
  const double a = weighted_area(poly, w);
  if (!(a > 0.0)) throw Error(ErrorCode::Domain, "isoperimetric ratio needs positive weighted area");
  return weighted_perimeter(poly, w) / std::pow(a, w.area_exponent());
}

HalfPlanePolygon scale(const HalfPlanePolygon& poly, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::Domain, "scale factor must be positive");
  std::vector<HalfPlanePolygon::Loop> loops = poly.loops();
  for (auto& loop : loops)
    for (auto& p : loop) p = {p.x * t, p.y * t};
  return HalfPlanePolygon::trusted(std::move(loops));
}

HalfPlanePolygon translate_x(const HalfPlanePolygon& poly, double dx) {
  std::vector<HalfPlanePolygon::Loop> loops = poly.loops();
  for (auto& loop : loops)
    for (auto& p : loop) p.x += dx;
  return HalfPlanePolygon::trusted(std::move(loops));
}

SliceProfile slice_profile(const HalfPlanePolygon& poly) {
  if (poly.empty()) throw Error(ErrorCode::InvalidPolygon, "slice profile of an empty polygon");
  SliceProfile prof;
  std::vector<SlopedEdge> edges;
  for_each_edge(poly, [&](Point a, Point b) {
    prof.levels.push_back(a.y);
    if (a.y == b.y) return;
    if (a.y < b.y) edges.push_back({a, b, +1.0});
    else edges.push_back({b, a, -1.0});
  });
  std::sort(prof.levels.begin(), prof.levels.end());
  prof.levels.erase(std::unique(prof.levels.begin(), prof.levels.end()), prof.levels.end());
  std::sort(edges.begin(), edges.end(), [](const SlopedEdge& e, const SlopedEdge& f) { return e.lo.y < f.lo.y; });

  const std::size_t bands = prof.levels.size() - 1;
  prof.band_bottom.resize(bands);
  prof.band_top.resize(bands);
  std::vector<const SlopedEdge*> active;
  std::size_t next = 0;
  for (std::size_t k = 0; k < bands; ++k) {
    const double y0 = prof.levels[k];
    const double y1 = prof.levels[k + 1];
    std::erase_if(active, [&](const SlopedEdge* e) { return e->hi.y <= y0; });
    while (next < edges.size() && edges[next].lo.y <= y0) active.push_back(&edges[next++]);
    double lo = 0.0;
    double hi = 0.0;
    for (const SlopedEdge* e : active) {
      lo += e->sign * e->x_at(y0);
      hi += e->sign * e->x_at(y1);
    }
    prof.band_bottom[k] = std::max(lo, 0.0);
    prof.band_top[k] = std::max(hi, 0.0);
  }
  return prof;
}

HalfPlanePolygon steiner_symmetrize(const HalfPlanePolygon& poly) {
  const SliceProfile prof = slice_profile(poly);
  std::vector<HalfPlanePolygon::Loop> loops;

  auto positive = [&](std::size_t k) { return prof.band_bottom[k] > 0.0 || prof.band_top[k] > 0.0; };
  auto half = [](double l) { return l == 0.0 ? 0.0 : 0.5 * l; };

  std::size_t k = 0;
  const std::size_t bands = prof.band_count();
  while (k < bands) {
    if (!positive(k)) {
      ++k;
      continue;
    }
    // Right half of one component, bottom to top, including both one-sided
    // limits at jump levels.
    HalfPlanePolygon::Loop right;
    right.push_back({half(prof.band_bottom[k]), prof.levels[k]});
    while (true) {
      right.push_back({half(prof.band_top[k]), prof.levels[k + 1]});
      const bool pinched = prof.band_top[k] == 0.0;
      ++k;
      if (k >= bands || pinched || !positive(k)) break;
      right.push_back({half(prof.band_bottom[k]), prof.levels[k]});
    }
    HalfPlanePolygon::Loop loop;
    loop.reserve(2 * right.size() + 1);
    if (right.front().x > 0.0) loop.push_back({-right.front().x, right.front().y});
    for (const Point& p : right) loop.push_back(p);
    for (std::size_t i = right.size(); i-- > 0;)
      if (right[i].x > 0.0) loop.push_back({-right[i].x, right[i].y});
    HalfPlanePolygon::Loop clean;
    clean.reserve(loop.size());
    for (const Point& p : loop)
      if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
    while (clean.size() > 1 && clean.back() == clean.front()) clean.pop_back();
    if (clean.size() >= 3) loops.push_back(std::move(clean));
  }
  if (loops.empty()) throw Error(ErrorCode::InvalidPolygon, "symmetrization of a polygon with empty interior");
  return HalfPlanePolygon::trusted(std::move(loops));
}

}  // namespace wiso
