#include "wiso/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiso/error.hpp"

namespace wiso {

namespace {

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

struct Edge {
  Point a;
  Point b;
  std::size_t loop;
  std::size_t index;
  double xmin;
  double xmax;
};

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidPolygon, what); }

bool adjacent(const Edge& e, const Edge& f, std::size_t loop_size) {
  if (e.loop != f.loop) return false;
  return (e.index + 1) % loop_size == f.index || (f.index + 1) % loop_size == e.index;
}

// Adjacent edges a->v and v->b overlap only if they fold back on each other.
bool folds_back(Point a, Point v, Point b) {
  if (orient(a, v, b) != 0.0) return false;
  return (a.x - v.x) * (b.x - v.x) + (a.y - v.y) * (b.y - v.y) > 0.0;
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool point_in_loop(Point p, const HalfPlanePolygon::Loop& loop) {
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = loop[i];
    const Point& b = loop[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

double signed_area(const HalfPlanePolygon::Loop& loop) {
  double s = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = loop[i];
    const Point& q = loop[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

void validate_loops(const std::vector<HalfPlanePolygon::Loop>& loops) {
  if (loops.empty()) fail("polygon has no loops");
  std::vector<Edge> edges;
  for (std::size_t l = 0; l < loops.size(); ++l) {
    const auto& loop = loops[l];
    const std::string where = "loop " + std::to_string(l);
    if (loop.size() < 3) fail(where + " has fewer than 3 vertices");
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point& p = loop[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        fail(where + " vertex " + std::to_string(i) + " is not finite");
      if (p.y < 0.0) fail(where + " vertex " + std::to_string(i) + " has y < 0");
      if (p == loop[(i + 1) % loop.size()])
        fail(where + " repeats vertex " + std::to_string(i) + " consecutively");
    }
    if (!(signed_area(loop) > 0.0)) fail(where + " is not counter-clockwise (signed area <= 0)");
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = loop[i];
      const Point b = loop[(i + 1) % n];
      if (folds_back(loop[(i + n - 1) % n], a, b))
        fail(where + " folds back on itself at vertex " + std::to_string(i));
      edges.push_back({a, b, l, i, std::min(a.x, b.x), std::max(a.x, b.x)});
    }
  }

  // Sort-and-sweep on x extents; only pairs whose x ranges overlap are tested.
  std::sort(edges.begin(), edges.end(), [](const Edge& e, const Edge& f) { return e.xmin < f.xmin; });
  std::vector<const Edge*> active;
  for (const Edge& e : edges) {
    std::erase_if(active, [&](const Edge* f) { return f->xmax < e.xmin; });
    const double eymin = std::min(e.a.y, e.b.y);
    const double eymax = std::max(e.a.y, e.b.y);
    for (const Edge* f : active) {
      if (std::max(f->a.y, f->b.y) < eymin || std::min(f->a.y, f->b.y) > eymax) continue;
      if (adjacent(e, *f, loops[e.loop].size())) continue;
      if (segments_intersect(e.a, e.b, f->a, f->b)) {
        if (e.loop == f->loop)
          fail("loop " + std::to_string(e.loop) + " self-intersects (edges " +
               std::to_string(std::min(e.index, f->index)) + " and " +
               std::to_string(std::max(e.index, f->index)) + ")");
        fail("loops " + std::to_string(std::min(e.loop, f->loop)) + " and " +
             std::to_string(std::max(e.loop, f->loop)) + " intersect");
      }
    }
    active.push_back(&e);
  }

  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t j = 0; j < loops.size(); ++j)
      if (i != j && point_in_loop(loops[i][0], loops[j]))
        fail("loop " + std::to_string(i) + " lies inside loop " + std::to_string(j));
}

HalfPlanePolygon HalfPlanePolygon::from_loops(std::vector<Loop> loops) {
  validate_loops(loops);
  return HalfPlanePolygon(std::move(loops));
}

HalfPlanePolygon HalfPlanePolygon::from_vertices(Loop vertices) {
  std::vector<Loop> loops;
  loops.push_back(std::move(vertices));
  return from_loops(std::move(loops));
}

HalfPlanePolygon HalfPlanePolygon::trusted(std::vector<Loop> loops) { return HalfPlanePolygon(std::move(loops)); }

HalfPlanePolygon HalfPlanePolygon::rectangle(double x0, double x1, double y0, double y1) {
  return from_vertices({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

std::size_t HalfPlanePolygon::vertex_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : loops_) n += l.size();
  return n;
}

}  // namespace wiso
