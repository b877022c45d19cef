#include "wiso/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "wiso/config_io.hpp"
#include "wiso/error.hpp"
#include "wiso/euler_flow.hpp"
#include "wiso/geometry.hpp"

namespace wiso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min()); }

// Margin of a strict inequality x > 0: x itself, forced negative when x <= 0.
double strict(double x) { return x > 0.0 ? x : std::min(x, -std::numeric_limits<double>::denorm_min()); }

void require_increasing(const std::vector<double>& t, const char* what) {
  if (t.empty()) throw Error(ErrorCode::Domain, std::string(what) + " list is empty");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw Error(ErrorCode::Domain, std::string(what) + " list must be strictly increasing");
}

std::string weights_text(const std::vector<WeightPair>& ws) {
  std::string s;
  for (const auto& w : ws) {
    if (!s.empty()) s += ' ';
    s += "(" + format_real(w.alpha()) + "," + format_real(w.beta()) + ")";
  }
  return s;
}

// Runs one sub-report per weight pair in parallel and concatenates them in order.
template <class Fn>
SweepReport per_weight(const std::string& suite, const std::vector<WeightPair>& ws, Fn&& fn) {
  std::vector<SweepReport> parts(ws.size());
  detail::parallel_for(ws.size(), [&](std::size_t i) { parts[i] = fn(ws[i]); });
  SweepReport out;
  out.suite = suite;
  for (const auto& p : parts) {
    if (out.columns.empty()) out.columns = p.columns;
    append_records(out, p);
    if (!out.grid.empty()) out.grid += "; ";
    out.grid += p.grid;
  }
  return out;
}

// ------------------------------------------------------------ polygon draws

HalfPlanePolygon::Loop convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

HalfPlanePolygon draw_hull(Rng& rng) {
  const int k = static_cast<int>(rng.uniform_int(3, 12));
  const double w = rng.uniform(0.2, 3.0);
  const double h = rng.uniform(0.2, 3.0);
  const double x0 = rng.uniform(-2.0, 2.0);
  const bool on_axis = rng.uniform() < 0.4;
  const double y0 = on_axis ? 0.0 : rng.uniform(0.0, 3.0);
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back({x0 + w * rng.uniform(), y0 + h * rng.uniform()});
  if (on_axis) {
    // Two points on the axis give the hull an edge there.
    pts.push_back({x0 + w * rng.uniform(), 0.0});
    pts.push_back({x0 + w * rng.uniform(), 0.0});
  }
  HalfPlanePolygon::Loop hull = convex_hull(std::move(pts));
  // Slivers are degenerate draws: their area is a roundoff-level difference
  // of boundary terms, which no relative area tolerance can survive.
  if (hull.size() >= 3) {
    double x_lo = kInf, x_hi = -kInf, y_lo = kInf, y_hi = -kInf;
    for (const Point& q : hull) {
      x_lo = std::min(x_lo, q.x);
      x_hi = std::max(x_hi, q.x);
      y_lo = std::min(y_lo, q.y);
      y_hi = std::max(y_hi, q.y);
    }
    if (signed_area(hull) < 0.01 * (x_hi - x_lo) * (y_hi - y_lo))
      throw Error(ErrorCode::InvalidPolygon, "hull covers less than 1% of its bounding box");
  }
  return HalfPlanePolygon::from_vertices(std::move(hull));
}

HalfPlanePolygon draw_star(Rng& rng) {
  const int m = static_cast<int>(rng.uniform_int(5, 24));
  const double r = rng.uniform(0.3, 2.0);
  const double cx = rng.uniform(-2.0, 2.0);
  HalfPlanePolygon::Loop loop;
  double ymin = kInf;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + rng.uniform(0.1, 0.9)) / m;
    const double rk = r * rng.uniform(0.3, 1.0);
    loop.push_back({cx + rk * std::cos(th), rk * std::sin(th)});
    ymin = std::min(ymin, loop.back().y);
  }
  const double lift = (rng.uniform() < 0.4) ? 0.0 : rng.uniform(0.0, 2.0);
  for (auto& p : loop) p.y = std::max(0.0, p.y - ymin + lift);
  return HalfPlanePolygon::from_vertices(std::move(loop));
}

HalfPlanePolygon draw_boxes(Rng& rng) {
  const int n = static_cast<int>(rng.uniform_int(2, 3));
  const bool stacked = rng.uniform() < 0.4;
  std::vector<HalfPlanePolygon::Loop> loops;
  double cursor = stacked ? ((rng.uniform() < 0.5) ? 0.0 : rng.uniform(0.0, 1.0)) : rng.uniform(-2.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const double w = rng.uniform(0.1, 2.0);
    const double h = rng.uniform(0.1, 2.0);
    double x0, y0;
    if (stacked) {
      // Overlapping x ranges, separated in y.
      x0 = rng.uniform(-1.0, 1.0);
      y0 = cursor;
      cursor = y0 + h + rng.uniform(0.05, 1.0);
    } else {
      x0 = cursor;
      cursor = x0 + w + rng.uniform(0.05, 1.0);
      y0 = (rng.uniform() < 0.5) ? 0.0 : rng.uniform(0.0, 2.0);
    }
    loops.push_back(HalfPlanePolygon::rectangle(x0, x0 + w, y0, y0 + h).loops().front());
  }
  return HalfPlanePolygon::from_loops(std::move(loops));
}

HalfPlanePolygon draw_inscribed(Rng& rng, const OptimalProfile& prof) {
  const int n = prof.intervals();
  const int stride = n / (8 << rng.uniform_int(0, 3));  // 8 to 64 intervals
  const auto& y = prof.ys();
  const auto& f = prof.fs();
  const double s = rng.uniform(0.2, 3.0);
  const double dx = rng.uniform(-2.0, 2.0);
  HalfPlanePolygon::Loop loop;
  loop.push_back({dx - s * f[0], 0.0});
  for (int j = 0; j < n; j += stride) loop.push_back({dx + s * f[j], s * y[j]});
  loop.push_back({dx, s});
  for (int j = n - stride; j >= stride; j -= stride) loop.push_back({dx - s * f[j], s * y[j]});
  return HalfPlanePolygon::trusted({std::move(loop)});
}

// ----------------------------------------------------------------- spectral

// phi(rho) for the indicator witness: 1 below 1 - width, linear to 0 at 1.
double ramp(double rho, double width) { return std::clamp((1.0 - rho) / width, 0.0, 1.0); }

// Gauge of the optimal set at (x, y): the t with (x, y) on the boundary of t * set.
double gauge(const OptimalProfile& prof, double x, double y) {
  const double ax = std::abs(x);
  if (ax == 0.0) return y;
  auto outside = [&](double t) { return y >= t || ax >= t * prof(y / t); };
  double lo = y;
  double hi = std::max(2.0 * y, 2.0 * ax / prof.f0());
  while (outside(hi) == outside(lo) && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (outside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void SweepReport::add(std::vector<double> values, double margin, std::string note) {
  CaseRecord r;
  r.values = std::move(values);
  r.margin = margin;
  r.pass = margin >= 0.0;
  r.note = std::move(note);
  records.push_back(std::move(r));
}

void SweepReport::finalize(double runtime_ms) {
  summary = {};
  summary.cases = records.size();
  summary.min_margin = records.empty() ? 0.0 : kInf;
  for (const auto& r : records) {
    if (!r.pass) ++summary.failures;
    summary.min_margin = std::min(summary.min_margin, r.margin);
  }
  summary.max_violation = std::max(0.0, -summary.min_margin);
  summary.runtime_ms = runtime_ms;
}

bool SweepReport::passed() const noexcept {
  return !records.empty() && std::all_of(records.begin(), records.end(), [](const CaseRecord& r) { return r.pass; });
}

void append_records(SweepReport& into, const SweepReport& part) {
  if (into.columns.empty()) into.columns = part.columns;
  if (into.columns != part.columns) throw Error(ErrorCode::Domain, "cannot merge reports with different columns");
  into.records.insert(into.records.end(), part.records.begin(), part.records.end());
}

std::vector<WeightPair> sharp_sweep_grid(bool unique) {
  std::vector<WeightPair> out;
  for (double a : {0.0, 0.5, 1.0, 2.0})
    for (double f : {1.0, 1.5, 2.0}) {
      const WeightPair w(a, f * a);
      if (unique && std::find(out.begin(), out.end(), w) != out.end()) continue;
      out.push_back(w);
    }
  return out;
}

// --------------------------------------------------------------- rectangles

double rectangle_ratio_closed(const WeightPair& w, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "rectangle width must be positive");
  const double a = w.alpha();
  const double b = w.beta();
  return (t + 2.0 / (a + 1.0)) / std::pow(t / (b + 1.0), w.area_exponent());
}

SweepReport rectangle_sequence(const WeightPair& w, const std::vector<double>& t_values, double agreement_tol) {
  require_increasing(t_values, "t");
  if (!(t_values.front() > 0.0)) throw Error(ErrorCode::Domain, "rectangle widths must be positive");
  SweepReport rep;
  rep.suite = "rectangle";
  rep.columns = {"alpha", "beta", "t", "r_polygon", "r_closed", "rel_diff", "limit_gap"};
  rep.grid = "w=(" + format_real(w.alpha()) + "," + format_real(w.beta()) + ") t=" +
             std::to_string(t_values.size()) + " values";
  const WeightClass cls = w.classify();
  const double mu = (cls == WeightClass::Sharp) ? mu_closed_form(w) : 0.0;
  // Limit of R as t grows: 0 past alpha = beta + 1, beta + 1 on that line.
  const double limit = (cls == WeightClass::BoundaryNoMin) ? w.beta() + 1.0 : 0.0;
  const bool decreasing = cls == WeightClass::BoundaryNoMin || (cls == WeightClass::DegenerateZero && w.gamma() < 0.0);
  double prev = kInf;
  for (double t : t_values) {
    const double rp = isoperimetric_ratio(HalfPlanePolygon::rectangle(0.0, t, 0.0, 1.0), w);
    const double rc = rectangle_ratio_closed(w, t);
    const double d = rel_diff(rp, rc);
    double margin = agreement_tol - d;
    std::string note;
    if (cls == WeightClass::Sharp) {
      margin = std::min(margin, (rp - mu) / mu);
      note = "R >= mu";
    }
    if (decreasing) {
      // Strictly decreasing and, on the boundary line, strictly above beta + 1.
      if (std::isfinite(prev)) margin = std::min(margin, strict((prev - rp) / prev));
      margin = std::min(margin, strict(rp - limit));
      note = (cls == WeightClass::BoundaryNoMin) ? "decreasing to beta+1 from above" : "decreasing to 0";
    }
    prev = rp;
    rep.add({w.alpha(), w.beta(), t, rp, rc, d, rp - limit}, margin, note);
  }
  return rep;
}

// -------------------------------------------------------------------- balls

double ball_exponent(const WeightPair& w) {
  return w.alpha() - w.beta() * (1.0 + w.alpha()) / (2.0 + w.beta());
}

HalfPlanePolygon disk_polygon(double t, int n_poly) {
  if (n_poly < 3) throw Error(ErrorCode::Domain, "disk polygon needs at least 3 vertices");
  if (!(t >= 1.0)) throw Error(ErrorCode::Domain, "disk must stay in the upper half-plane");
  HalfPlanePolygon::Loop loop(static_cast<std::size_t>(n_poly));
  for (int k = 0; k < n_poly; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n_poly - 0.5 * std::numbers::pi;
    loop[static_cast<std::size_t>(k)] = {std::cos(th), t + std::sin(th)};
  }
  return HalfPlanePolygon::trusted({std::move(loop)});
}

SweepReport ball_sequence(const WeightPair& w, const std::vector<double>& t_values, int n_poly, double slope_rel_tol,
                          double bound_factor) {
  require_increasing(t_values, "t");
  if (!(t_values.front() >= 2.0)) throw Error(ErrorCode::Domain, "ball heights must satisfy t >= 2");
  if (n_poly < 3) throw Error(ErrorCode::Domain, "n_poly must be at least 3");
  const double e = ball_exponent(w);
  const double t_max = t_values.back();
  std::vector<double> r(t_values.size());
  for (std::size_t k = 0; k < t_values.size(); ++k) r[k] = isoperimetric_ratio(disk_polygon(t_values[k], n_poly), w);

  std::vector<std::size_t> tail;
  for (std::size_t k = 0; k < t_values.size(); ++k)
    if (t_values[k] >= t_max / 10.0) tail.push_back(k);
  const double c = r[tail.front()] / std::pow(t_values[tail.front()], e);

  // Least-squares slope of log R against log t over the tail.
  double slope = 0.0;
  if (tail.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k : tail) {
      const double lx = std::log(t_values[k]);
      const double ly = std::log(r[k]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double m = static_cast<double>(tail.size());
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  const double slope_margin =
      (tail.size() >= 2) ? slope_rel_tol * std::abs(e) + 1e-9 - std::abs(slope - e) : -1.0;
  const bool must_decrease = 2.0 * w.alpha() < w.beta();

  SweepReport rep;
  rep.suite = "ball";
  rep.columns = {"alpha", "beta", "t", "ratio", "in_tail", "fitted_bound", "tail_slope", "exponent"};
  rep.grid = "w=(" + format_real(w.alpha()) + "," + format_real(w.beta()) + ") n_poly=" + std::to_string(n_poly) +
             " t=" + std::to_string(t_values.size()) + " values";
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    const bool in_tail = t_values[k] >= t_max / 10.0;
    const double bound = c * std::pow(t_values[k], e);
    double margin = slope_margin;
    if (in_tail) {
      margin = std::min(margin, (bound_factor * bound - r[k]) / bound);
      if (must_decrease && k > tail.front()) margin = std::min(margin, strict((r[k - 1] - r[k]) / r[k - 1]));
    }
    rep.add({w.alpha(), w.beta(), t_values[k], r[k], in_tail ? 1.0 : 0.0, bound, slope, e}, margin,
            in_tail ? "tail" : "");
  }
  return rep;
}

// ------------------------------------------------------------------ lemma A

double lemma_a_g(double z, double alpha, double beta) {
  const double a = alpha;
  const double c = beta + 1.0 - alpha;
  return a * (1.0 - std::pow(z, a + 1.0) + std::pow(z, c) - std::pow(z, beta + 2.0)) +
         c * (-z + std::pow(z, c) - std::pow(z, a + 1.0) + std::pow(z, beta + 1.0));
}

double lemma_a_g_stable(double z, double alpha, double beta) {
  if (z == 0.0) return alpha;
  const double a = alpha;
  const double c = beta + 1.0 - alpha;
  const double lz = std::log(z);
  const double one_minus_za1 = -std::expm1((a + 1.0) * lz);
  const double one_minus_zc1 = -std::expm1((c - 1.0) * lz);
  return a * one_minus_za1 * (1.0 + std::pow(z, c)) - c * (1.0 + std::pow(z, a)) * z * one_minus_zc1;
}

SweepReport lemma_a_sweep(double alpha, int z_grid, int beta_grid, double identity_tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::Domain, "lemma A needs alpha > 0");
  if (z_grid < 100 || beta_grid < 100) throw Error(ErrorCode::Domain, "lemma A grids need at least 100 points");
  SweepReport rep;
  rep.suite = "lemma_a";
  rep.columns = {"alpha", "beta", "min_g", "argmin_z", "min_g_termwise", "identity_err", "limit_err"};
  rep.grid = "alpha=" + format_real(alpha) + " z_grid=" + std::to_string(z_grid) +
             " beta_grid=" + std::to_string(beta_grid);
  std::vector<CaseRecord> rows(static_cast<std::size_t>(beta_grid));
  detail::parallel_for(rows.size(), [&](std::size_t m) {
    const double beta = alpha + alpha * static_cast<double>(m) / (beta_grid - 1);
    double min_g = kInf, arg = 0.0, min_lit = kInf, id_err = 0.0;
    for (int k = 1; k <= z_grid; ++k) {
      const double z = static_cast<double>(k) / (z_grid + 1);
      const double g = lemma_a_g_stable(z, alpha, beta);
      if (g < min_g) {
        min_g = g;
        arg = z;
      }
      const double lit = lemma_a_g(z, alpha, beta);
      min_lit = std::min(min_lit, lit);
      if (m == 0) {
        const double closed = alpha * (1.0 - std::pow(z, alpha + 1.0)) * (1.0 + z);
        id_err = std::max(id_err, std::abs(lit - closed));
      }
    }
    const double limit_err = std::max(std::abs(lemma_a_g(0.0, alpha, beta) - alpha), std::abs(lemma_a_g(1.0, alpha, beta)));
    double margin = std::min(strict(min_g), identity_tol - id_err);
    margin = std::min(margin, identity_tol - limit_err);
    CaseRecord& r = rows[m];
    r.values = {alpha, beta, min_g, arg, min_lit, id_err, limit_err};
    r.margin = margin;
    r.pass = margin >= 0.0;
    r.note = (m == 0) ? "beta=alpha identity" : "";
  });
  rep.records = std::move(rows);
  return rep;
}

// ------------------------------------------------------------------- stress

const char* polygon_kind_name(PolygonKind k) noexcept {
  switch (k) {
    case PolygonKind::ConvexHull: return "hull";
    case PolygonKind::Star: return "star";
    case PolygonKind::Boxes: return "boxes";
    case PolygonKind::InscribedOptimal: return "inscribed";
  }
  return "?";
}

PolygonKind draw_polygon_kind(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.30) return PolygonKind::ConvexHull;
  if (u < 0.60) return PolygonKind::Star;
  if (u < 0.85) return PolygonKind::Boxes;
  return PolygonKind::InscribedOptimal;
}

HalfPlanePolygon random_polygon(Rng& rng, PolygonKind kind, const OptimalProfile* prof) {
  switch (kind) {
    case PolygonKind::ConvexHull: return draw_hull(rng);
    case PolygonKind::Star: return draw_star(rng);
    case PolygonKind::Boxes: return draw_boxes(rng);
    case PolygonKind::InscribedOptimal:
      if (prof == nullptr || prof->intervals() % 64 != 0)
        throw Error(ErrorCode::Domain, "inscribed draws need a profile with a multiple of 64 intervals");
      return draw_inscribed(rng, *prof);
  }
  throw Error(ErrorCode::Domain, "unknown polygon kind");
}

SweepReport random_polygon_stress(const WeightPair& w, int count, std::uint64_t seed, double ratio_tol,
                                  double steiner_tol) {
  w.require_sharp();
  if (count <= 0) throw Error(ErrorCode::Domain, "stress count must be positive");
  const double mu = mu_closed_form(w);
  const OptimalProfile prof(w, 256);
  const Rng base = Rng(seed).split(mix64(std::bit_cast<std::uint64_t>(w.alpha())) ^ std::bit_cast<std::uint64_t>(w.beta()));

  SweepReport rep;
  rep.suite = "stress";
  rep.columns = {"alpha", "beta", "kind", "ratio", "ratio_margin", "area_rel_change", "perimeter_rel_change"};
  std::vector<CaseRecord> rows(static_cast<std::size_t>(count));
  std::vector<std::size_t> redraws(rows.size(), 0);
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    Rng rng = base.split(i);
    HalfPlanePolygon poly;
    PolygonKind kind{};
    for (;;) {
      kind = draw_polygon_kind(rng);
      try {
        poly = random_polygon(rng, kind, &prof);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidPolygon) throw;
        ++redraws[i];
      }
    }
    const double p = weighted_perimeter(poly, w);
    const double a = weighted_area(poly, w);
    const double ratio = p / std::pow(a, w.area_exponent());
    const HalfPlanePolygon sym = steiner_symmetrize(poly);
    const double ps = weighted_perimeter(sym, w);
    const double as = weighted_area(sym, w);
    const double area_change = (as - a) / a;
    const double perim_change = (ps - p) / p;
    const double margin = std::min({ratio - mu + ratio_tol, steiner_tol - std::abs(area_change), steiner_tol - perim_change});
    CaseRecord& r = rows[i];
    r.values = {w.alpha(), w.beta(), static_cast<double>(kind), ratio, ratio - mu, area_change, perim_change};
    r.margin = margin;
    r.pass = margin >= 0.0;
    r.note = polygon_kind_name(kind);
  });
  std::size_t total_redraws = 0;
  for (std::size_t d : redraws) total_redraws += d;
  rep.records = std::move(rows);
  rep.grid = "w=(" + format_real(w.alpha()) + "," + format_real(w.beta()) + ") count=" + std::to_string(count) +
             " seed=" + std::to_string(seed) + " redraws=" + std::to_string(total_redraws);
  return rep;
}

// ------------------------------------------------------------------ oracles

SweepReport oracle_sweep(const OracleParams& params) {
  const auto body = [&](const WeightPair& w) {
    SweepReport rep;
    rep.columns = {"alpha",      "beta",      "mu_closed",    "mu_quadrature", "mu_shooting",
                   "rel_quad",   "rel_shoot", "endpoint_err", "sup_err",       "first_integral"};
    rep.grid = "(" + format_real(w.alpha()) + "," + format_real(w.beta()) + ")";
    const double mu = mu_closed_form(w);
    const double quad = optimal_functionals(w, params.quadrature).ratio_quadrature(w);
    ShootConfig sc;
    sc.step_tol = params.step_tol;
    const EulerTrajectory traj = shoot(w, sc);
    const double shot = traj.weighted_perimeter / std::pow(traj.weighted_area, w.area_exponent());
    const OptimalProfile prof(w, params.profile_intervals, params.quadrature);
    const double end_err = std::abs(traj.endpoint_x - profile_f(w, 0.0, params.quadrature));
    const double sup_err = compare_to_profile(traj, prof);
    const double fi = first_integral_residual(traj, w);
    const double rq = rel_diff(quad, mu);
    const double rs = rel_diff(shot, mu);
    const double margin = std::min({params.mu_rel_tol - std::max(rq, rs), params.boundary_tol - end_err,
                                    params.boundary_tol - sup_err});
    rep.add({w.alpha(), w.beta(), mu, quad, shot, rq, rs, end_err, sup_err, fi}, margin);
    return rep;
  };
  SweepReport rep = per_weight("oracles", params.weights, body);
  rep.grid = "step_tol=" + format_real(params.step_tol) + " weights=" + weights_text(params.weights);
  return rep;
}

SweepReport dual_mu_grid(const DualMuParams& params) {
  if (params.grid_n < 2) throw Error(ErrorCode::Domain, "dual_mu grid needs at least 2 points per axis");
  std::vector<WeightPair> ws;
  for (int i = 0; i < params.grid_n; ++i) {
    const double a = params.alpha_max * i / (params.grid_n - 1);
    const double b_hi = std::min(2.0 * a, a + 0.99);
    for (int j = 0; j < params.grid_n; ++j) ws.emplace_back(a, a + (b_hi - a) * j / (params.grid_n - 1));
  }
  SweepReport rep = per_weight("dual_mu", ws, [&](const WeightPair& w) {
    SweepReport r;
    r.columns = {"alpha", "beta", "mu_closed", "mu_quadrature", "rel_diff"};
    const double mu = mu_closed_form(w);
    const double quad = optimal_functionals(w, params.quadrature).ratio_quadrature(w);
    const double d = rel_diff(quad, mu);
    r.add({w.alpha(), w.beta(), mu, quad, d}, params.rel_tol - d);
    return r;
  });
  rep.grid = std::to_string(params.grid_n) + "x" + std::to_string(params.grid_n) +
             " alpha in [0," + format_real(params.alpha_max) + "]";
  return rep;
}

SweepReport inscribed_convergence(const InscribedParams& params) {
  if (params.n_values.empty()) throw Error(ErrorCode::Domain, "n list is empty");
  SweepReport rep = per_weight("inscribed", params.weights, [&](const WeightPair& w) {
    SweepReport r;
    r.columns = {"alpha", "beta", "n", "ratio", "gap"};
    const double mu = mu_closed_form(w);
    double prev_gap = kInf;
    for (std::size_t k = 0; k < params.n_values.size(); ++k) {
      const int n = params.n_values[k];
      const double ratio = isoperimetric_ratio(sample_optimal_polygon(w, n, params.quadrature), w);
      const double gap = ratio - mu;
      double margin = strict(gap);
      if (std::isfinite(prev_gap)) margin = std::min(margin, strict(prev_gap - gap));
      if (k + 1 == params.n_values.size()) margin = std::min(margin, params.final_gap - gap);
      prev_gap = gap;
      r.add({w.alpha(), w.beta(), static_cast<double>(n), ratio, gap}, margin);
    }
    return r;
  });
  rep.grid = "weights=" + weights_text(params.weights);
  return rep;
}

SweepReport half_circle(const HalfCircleParams& params) {
  std::vector<WeightPair> ws;
  for (double a : params.alphas) ws.emplace_back(a, a);
  SweepReport rep = per_weight("half_circle", ws, [&](const WeightPair& w) {
    SweepReport r;
    r.columns = {"alpha", "profile_err", "kappa_err", "turning_err", "circle_err"};
    double prof_err = 0.0;
    for (int k = 0; k < params.samples; ++k) {
      const double y = static_cast<double>(k) / (params.samples - 1);
      const double circle = std::sqrt((1.0 - y) * (1.0 + y));
      prof_err = std::max(prof_err, std::abs(profile_f(w, y, params.quadrature) - circle));
    }
    const EulerTrajectory traj = shoot(w);
    double kappa_err = 0.0, turn_err = 0.0, circ_err = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const EulerState& s = traj.states[k];
      kappa_err = std::max(kappa_err, std::abs(s.kappa - 1.0));
      circ_err = std::max(circ_err, std::abs(std::hypot(s.x, s.y) - 1.0));
      if (k > 0) {
        const EulerState& p = traj.states[k - 1];
        turn_err = std::max(turn_err, std::abs((p.theta - s.theta) / (s.s - p.s) - 1.0));
      }
    }
    const double margin = std::min({params.profile_tol - prof_err, params.kappa_tol - kappa_err,
                                    params.kappa_tol - turn_err, params.circle_tol - circ_err});
    r.add({w.alpha(), prof_err, kappa_err, turn_err, circ_err}, margin);
    return r;
  });
  rep.grid = "alpha=beta samples=" + std::to_string(params.samples);
  return rep;
}

// ------------------------------------------------------------------ cheeger

SweepReport cheeger_suite(const CheegerParams& params) {
  if (params.weights.empty() || params.count < 0) throw Error(ErrorCode::Domain, "cheeger suite needs weights");
  SweepReport rep;
  rep.suite = "cheeger";
  rep.columns = {"alpha", "beta", "p", "area", "value", "reference"};
  const double tol = params.exact_tol;
  auto exact = [&](const char* name, double a, double b, double p, double area, double v, double ref) {
    rep.add({a, b, p, area, v, ref}, tol - rel_diff(v, ref), name);
  };
  const double pi = std::numbers::pi;
  const WeightPair flat(0.0, 0.0);
  exact("h unit half-disk", 0, 0, 0, pi / 2, cheeger_lower_bound(flat, pi / 2).h, 2.0);
  exact("h unit area", 0, 0, 0, 1.0, cheeger_lower_bound(flat, 1.0).h, std::sqrt(2.0 * pi));
  exact("t_match unit half-disk", 0, 0, 0, pi / 2, cheeger_lower_bound(flat, pi / 2).t_match, 1.0);
  exact("eigen p=2 unit area", 0, 0, 2, 1.0, eigenvalue_lower_bound({2.0, 0.0, 0.0}, 1.0), pi / 2);
  exact("eigen p=2 half-disk", 0, 0, 2, pi / 2, eigenvalue_lower_bound({2.0, 0.0, 0.0}, pi / 2), 1.0);
  exact("eigen p=4 half-disk", 0, 0, 4, pi / 2, eigenvalue_lower_bound({4.0, 0.0, 0.0}, pi / 2), 1.0 / 16.0);
  for (const WeightPair& w : params.weights) {
    const double base = cheeger_lower_bound(w, 1.0).h;
    for (double t : {0.1, 1.0, 10.0}) {
      const double scaled = cheeger_lower_bound(w, std::pow(t, w.beta() + 2.0)).h;
      exact("scaling law", w.alpha(), w.beta(), 0, std::pow(t, w.beta() + 2.0), scaled,
            base * std::pow(t, -w.gamma()));
    }
  }

  const std::size_t n = static_cast<std::size_t>(params.count);
  std::vector<CaseRecord> rows(n);
  const Rng base(params.seed);
  detail::parallel_for(n, [&](std::size_t i) {
    Rng rng = base.split(i);
    const WeightPair& w = params.weights[i % params.weights.size()];
    HalfPlanePolygon e;
    for (;;) {
      const auto kind = static_cast<PolygonKind>(rng.uniform_int(0, 2));
      try {
        e = random_polygon(rng, kind);
        break;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::InvalidPolygon) throw;
      }
    }
    const double target = rng.uniform(0.5, 5.0);
    const double fill = rng.uniform(0.01, 0.999);
    e = scale(e, std::pow(target * fill / weighted_area(e, w), 1.0 / (w.beta() + 2.0)));
    const CheegerBound bound = cheeger_lower_bound(w, target);
    const double ratio = subset_ratio_check(e, bound);
    CaseRecord& r = rows[i];
    r.values = {w.alpha(), w.beta(), 0.0, target, ratio, bound.h};
    r.margin = (ratio - bound.h) / bound.h;
    r.pass = r.margin >= 0.0;
    r.note = "random subset";
  });
  rep.records.insert(rep.records.end(), rows.begin(), rows.end());
  rep.grid = "weights=" + weights_text(params.weights) + " subsets=" + std::to_string(params.count) +
             " seed=" + std::to_string(params.seed);
  return rep;
}

// ----------------------------------------------------------------- spectral

GridFunction radial_bump(double cx, double cy, double r, std::size_t n) {
  if (!(r > 0.0) || !(cy > 1.25 * r)) throw Error(ErrorCode::Domain, "bump grid must stay above the axis");
  const double h = 2.5 * r / static_cast<double>(n - 1);
  GridFunction u = GridFunction::zeros(n, n, h, cx - 1.25 * r, cy - 1.25 * r);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = u.x(i) - cx;
      const double dy = u.y(j) - cy;
      const double s = 1.0 - (dx * dx + dy * dy) / (r * r);
      u.at(i, j) = (s > 0.0) ? s * s : 0.0;
    }
  return u;
}

GridFunction optimal_set_indicator(const WeightPair& w, double width, std::size_t n) {
  if (!(width > 0.0 && width < 1.0)) throw Error(ErrorCode::Domain, "indicator ramp width must lie in (0, 1)");
  const OptimalProfile prof(w, 256);
  const double half = 1.15 * prof.f0();
  const double h = 2.0 * half / static_cast<double>(n - 1);
  const std::size_t ny = static_cast<std::size_t>(std::ceil(1.15 / h)) + 1;
  GridFunction u = GridFunction::zeros(n, ny, h, -half, 0.5 * h);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < n; ++i) u.at(i, j) = ramp(gauge(prof, u.x(i), u.y(j)), width);
  return u;
}

SweepReport spectral_suite(const SpectralParams& params) {
  if (params.resolutions.size() < 2) throw Error(ErrorCode::Domain, "spectral suite needs at least two resolutions");
  SweepReport rep;
  rep.suite = "spectral";
  rep.columns = {"alpha", "beta", "n", "lhs", "rhs", "ratio", "refinement_err"};
  const double floor_ratio = 1.0 - params.sobolev_slack;

  struct Bump {
    WeightPair w;
    double cx, cy, r;
    double exact;  // continuum lhs/rhs, or 0 when unknown
  };
  // For alpha = beta = 0 and u = (1 - r^2/R^2)^2: lhs = 16 pi R / 15 and
  // rhs = sqrt(2 pi) R sqrt(pi / 5).
  const std::vector<Bump> bumps{{WeightPair(0.0, 0.0), 0.0, 3.0, 1.0, (16.0 / 15.0) / std::sqrt(0.4)},
                                {WeightPair(1.0, 1.5), 0.5, 2.0, 1.0, 0.0},
                                {WeightPair(0.5, 1.0), -0.3, 1.5, 0.8, 0.0}};
  for (const Bump& b : bumps) {
    std::vector<double> ratios;
    double prev_err = kInf;
    for (int n : params.resolutions) {
      const SobolevSides s = sobolev_check(radial_bump(b.cx, b.cy, b.r, static_cast<std::size_t>(n)), b.w);
      const double ratio = s.lhs / s.rhs;
      // Error against the exact value when known, else the change from the previous resolution.
      double err = kInf;
      if (b.exact > 0.0) err = std::abs(ratio - b.exact);
      else if (!ratios.empty()) err = std::abs(ratio - ratios.back());
      double margin = ratio - floor_ratio;
      if (std::isfinite(err) && std::isfinite(prev_err)) margin = std::min(margin, strict(prev_err - err));
      ratios.push_back(ratio);
      prev_err = err;
      rep.add({b.w.alpha(), b.w.beta(), static_cast<double>(n), s.lhs, s.rhs, ratio, std::isfinite(err) ? err : 0.0},
              margin, "bump");
    }
  }

  // Sharpness witness: smoothed indicators of the optimal set; the ratio
  // falls toward 1 as the ramp narrows.
  const int n_max = *std::max_element(params.resolutions.begin(), params.resolutions.end());
  for (const WeightPair& w : {WeightPair(0.0, 0.0), WeightPair(1.0, 1.5)}) {
    double prev = kInf;
    for (double width : {0.2, 0.1, 0.05}) {
      const SobolevSides s = sobolev_check(optimal_set_indicator(w, width, static_cast<std::size_t>(n_max)), w);
      const double ratio = s.lhs / s.rhs;
      double margin = ratio - floor_ratio;
      if (std::isfinite(prev)) margin = std::min(margin, strict(prev - ratio));
      prev = ratio;
      rep.add({w.alpha(), w.beta(), static_cast<double>(n_max), s.lhs, s.rhs, ratio, width}, margin,
              "witness width");
    }
  }

  // Classical Dirichlet oracle: sin(pi x/L) sin(pi y/L) on a square has
  // quotient 2 pi^2 / L^2 when unweighted.
  {
    const std::size_t n = 256;
    const double side = 1.5;
    const double h = side / static_cast<double>(n - 1);
    GridFunction u = GridFunction::zeros(n, n, h, -0.75, 1.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        u.at(i, j) = std::sin(std::numbers::pi * i * h / side) * std::sin(std::numbers::pi * j * h / side);
    const double rq = rayleigh_quotient(u, {2.0, 0.0, 0.0});
    const double ref = 2.0 * std::numbers::pi * std::numbers::pi / (side * side);
    rep.add({0.0, 0.0, static_cast<double>(n), rq, ref, rq / ref, std::abs(rq / ref - 1.0)},
            0.02 - std::abs(rq / ref - 1.0), "dirichlet sine");
  }

  // Random admissible functions against the eigenvalue bound.
  const std::vector<EigenParams>& eps = params.eigen_params;
  if (eps.empty()) throw Error(ErrorCode::Domain, "spectral suite needs eigen parameters");
  const std::size_t count = static_cast<std::size_t>(std::max(0, params.rayleigh_count));
  std::vector<CaseRecord> rows(count);
  const Rng base(params.seed);
  detail::parallel_for(count, [&](std::size_t k) {
    Rng rng = base.split(k);
    const EigenParams& ep = eps[k % eps.size()];
    const WeightPair w = param_map(ep);
    const double a = rng.uniform(-1.0, 1.0);
    const double len = rng.uniform(0.5, 2.0);
    const double b = rng.uniform(0.1, 1.0);
    const std::size_t nx = static_cast<std::size_t>(params.rayleigh_resolution);
    const double h = len / static_cast<double>(nx - 1);
    const std::size_t ny = std::max<std::size_t>(8, static_cast<std::size_t>(std::lround(rng.uniform(0.5, 2.0) / h)) + 1);
    const double height = h * static_cast<double>(ny - 1);
    double coef[3][3];
    for (auto& row : coef)
      for (double& c : row) c = rng.uniform(-1.0, 1.0);
    GridFunction u = GridFunction::zeros(nx, ny, h, a, b);
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        double v = 0.0;
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q)
            v += coef[p][q] * std::sin((p + 1) * std::numbers::pi * i / (nx - 1)) *
                 std::sin((q + 1) * std::numbers::pi * j / (ny - 1));
        u.at(i, j) = v;
      }
    const double area = weighted_area(HalfPlanePolygon::rectangle(a, a + len, b, b + height), w);
    const double bound = eigenvalue_lower_bound(ep, area);
    const double rq = rayleigh_quotient(u, ep);
    CaseRecord& r = rows[k];
    r.values = {w.alpha(), w.beta(), static_cast<double>(nx), rq, bound, rq / bound, 0.0};
    r.margin = rq / bound - (1.0 - params.rayleigh_slack);
    r.pass = r.margin >= 0.0;
    r.note = "rayleigh vs bound";
  });
  rep.records.insert(rep.records.end(), rows.begin(), rows.end());
  std::string res;
  for (int n : params.resolutions) res += (res.empty() ? "" : ",") + std::to_string(n);
  rep.grid = "resolutions=" + res + " rayleigh=" + std::to_string(params.rayleigh_count) +
             " seed=" + std::to_string(params.seed);
  return rep;
}

// -------------------------------------------------------------------- runs

SweepReport run_suite(const std::string& name, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  SweepReport rep;
  if (name == "rectangle") {
    rep = per_weight(name, cfg.rectangle.weights, [&](const WeightPair& w) {
      return rectangle_sequence(w, cfg.rectangle.t_values, cfg.rectangle.agreement_tol);
    });
  } else if (name == "ball") {
    const BallParams& p = cfg.ball;
    rep = per_weight(name, p.weights, [&](const WeightPair& w) {
      return ball_sequence(w, p.t_values, p.n_poly, p.slope_rel_tol, p.bound_factor);
    });
  } else if (name == "lemma_a") {
    rep.suite = name;
    for (double a : cfg.lemma_a.alphas) {
      const SweepReport part = lemma_a_sweep(a, cfg.lemma_a.z_grid, cfg.lemma_a.beta_grid, cfg.lemma_a.identity_tol);
      append_records(rep, part);
      rep.grid += (rep.grid.empty() ? "" : "; ") + part.grid;
    }
  } else if (name == "stress") {
    const StressParams& p = cfg.stress;
    rep.suite = name;
    for (const WeightPair& w : p.weights) {
      const SweepReport part = random_polygon_stress(w, p.count, p.seed, p.ratio_tol, p.steiner_tol);
      append_records(rep, part);
      rep.grid += (rep.grid.empty() ? "" : "; ") + part.grid;
    }
  } else if (name == "oracles") {
    rep = oracle_sweep(cfg.oracles);
  } else if (name == "dual_mu") {
    rep = dual_mu_grid(cfg.dual_mu);
  } else if (name == "inscribed") {
    rep = inscribed_convergence(cfg.inscribed);
  } else if (name == "half_circle") {
    rep = half_circle(cfg.half_circle);
  } else if (name == "cheeger") {
    rep = cheeger_suite(cfg.cheeger);
  } else if (name == "spectral") {
    rep = spectral_suite(cfg.spectral);
  } else {
    throw Error(ErrorCode::Config, "unknown suite '" + name + "'");
  }
  rep.suite = name;
  rep.finalize(elapsed_ms(t0));
  return rep;
}

std::vector<SweepReport> run_all(const RunConfig& cfg) {
  std::vector<SweepReport> out;
  for (const char* name : kSuiteNames)
    if (cfg.enabled.count(name) != 0) out.push_back(run_suite(name, cfg));
  return out;
}

}  // namespace wiso
