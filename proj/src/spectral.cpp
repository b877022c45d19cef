#include "wiso/spectral.hpp"

#include <cmath>

#include "parallel.hpp"
#include "wiso/error.hpp"
#include "wiso/geometry.hpp"
#include "wiso/kernels.hpp"
#include "wiso/optimal_set.hpp"

namespace wiso {

namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::Domain, "p must be a finite number > 1");
}

double weight(double y, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(y, exponent); }

// Per-row |grad u|^2 handed to `visit(j, g2_row)`; rows run in parallel and
// the caller stores per-row partial sums by index.
template <class Visit>
void for_each_gradient_row(const GridFunction& u, Visit&& visit) {
  const auto& k = kernels::active();
  const std::size_t nx = u.nx();
  const std::size_t ny = u.ny();
  const double inv = 1.0 / u.spacing();
  const double* v = u.values().data();
  detail::parallel_for(ny, [&](std::size_t j) {
    std::vector<double> g2(nx);
    const double* row = v + j * nx;
    if (j == 0) k.gradient_sq_row(row, row, row + nx, nx, 0.5 * inv, inv, g2.data());
    else if (j + 1 == ny) k.gradient_sq_row(row - nx, row, row, nx, 0.5 * inv, inv, g2.data());
    else k.gradient_sq_row(row - nx, row, row + nx, nx, 0.5 * inv, 0.5 * inv, g2.data());
    visit(j, g2);
  });
}

// Row partial sums are combined in row order so the result is reproducible.
double ordered_total(const std::vector<double>& rows) {
  double s = 0.0;
  for (double r : rows) s += r;
  return s;
}

// sum over the row of |v|^q, through the SIMD kernels for q in {1, 2}.
double row_power_sum(const double* v, std::size_t n, double q, std::vector<double>& scratch) {
  const auto& k = kernels::active();
  if (q == 1.0) return k.sum_abs(v, n);
  if (q == 2.0) return k.sum_squares(v, n);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = std::pow(std::abs(v[i]), q);
  return k.sum(scratch.data(), n);
}

// sum over the row of (g2)^(p/2).
double row_gradient_sum(std::vector<double>& g2, double p) {
  const auto& k = kernels::active();
  if (p == 2.0) return k.sum(g2.data(), g2.size());
  if (p == 1.0) return k.sum_sqrt(g2.data(), g2.size());
  for (double& g : g2) g = std::pow(g, 0.5 * p);
  return k.sum(g2.data(), g2.size());
}

}  // namespace

std::string region_violation(const EigenParams& ep) {
  check_p(ep.p);
  if (!std::isfinite(ep.gamma1) || !std::isfinite(ep.gamma2))
    throw Error(ErrorCode::Domain, "gamma1 and gamma2 must be finite");
  const double s = ep.gamma1 + ep.gamma2;
  const double b = ep.p * ep.gamma2 / (ep.p - 1.0);
  if (!(s >= 0.0)) return "gamma1+gamma2 >= 0";
  if (!(b > s - 1.0)) return "p*gamma2/(p-1) > gamma1+gamma2-1";
  if (!(b <= 2.0 * s)) return "p*gamma2/(p-1) <= 2*(gamma1+gamma2)";
  return {};
}

bool in_region(const EigenParams& ep) { return region_violation(ep).empty(); }

WeightPair param_map(const EigenParams& ep) {
  check_p(ep.p);
  return WeightPair(ep.gamma1 + ep.gamma2, ep.p * ep.gamma2 / (ep.p - 1.0));
}

EigenParams inverse_param_map(const WeightPair& w, double p) {
  check_p(p);
  const double g2 = (p - 1.0) * w.beta() / p;
  return {p, w.alpha() - g2, g2};
}

CheegerBound cheeger_lower_bound(const WeightPair& w, double target_area) {
  w.require_sharp();
  if (!(target_area > 0.0) || !std::isfinite(target_area))
    throw Error(ErrorCode::Domain, "target area must be positive and finite");
  CheegerBound b;
  b.w = w;
  b.target_area = target_area;
  b.t_match = std::pow(target_area / optimal_area(w), 1.0 / (w.beta() + 2.0));
  b.h = mu_closed_form(w) * std::pow(target_area, w.area_exponent() - 1.0);
  return b;
}

double subset_ratio_check(const HalfPlanePolygon& e, const CheegerBound& bound) {
  const double a = weighted_area(e, bound.w);
  if (!(a > 0.0)) throw Error(ErrorCode::Domain, "subset has zero weighted area");
  if (a > bound.target_area)
    throw Error(ErrorCode::Domain, "subset has more weighted area than the domain the bound was matched to");
  return weighted_perimeter(e, bound.w) / a;
}

double eigenvalue_lower_bound(const EigenParams& ep, double target_area) {
  const std::string bad = region_violation(ep);
  if (!bad.empty()) throw Error(ErrorCode::Region, "eigen parameters violate " + bad);
  const CheegerBound b = cheeger_lower_bound(param_map(ep), target_area);
  return std::pow(b.h / ep.p, ep.p);
}

GridFunction::GridFunction(std::size_t nx, std::size_t ny, double spacing, double x0, double y0,
                           std::vector<double> values)
    : nx_(nx), ny_(ny), h_(spacing), x0_(x0), y0_(y0), values_(std::move(values)) {
  if (nx < 3 || ny < 3) throw Error(ErrorCode::Domain, "grid needs at least 3 samples per direction");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error(ErrorCode::Domain, "grid spacing must be positive");
  if (!std::isfinite(x0) || !(y0 > 0.0) || !std::isfinite(y0))
    throw Error(ErrorCode::Domain, "grid origin must be finite with y0 > 0");
  if (values_.size() != nx * ny)
    throw Error(ErrorCode::Domain, "grid holds " + std::to_string(values_.size()) + " values, expected " +
                                       std::to_string(nx * ny));
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorCode::Domain, "grid values must be finite");
}

GridFunction GridFunction::zeros(std::size_t nx, std::size_t ny, double spacing, double x0, double y0) {
  return GridFunction(nx, ny, spacing, x0, y0, std::vector<double>(nx * ny, 0.0));
}

bool GridFunction::abuts_axis() const noexcept { return std::abs(y0_ - 0.5 * h_) <= 1e-12 * h_; }

double GridFunction::rim_max() const {
  double m = 0.0;
  for (std::size_t i = 0; i < nx_; ++i) {
    if (!abuts_axis()) m = std::max(m, std::abs(at(i, 0)));
    m = std::max(m, std::abs(at(i, ny_ - 1)));
  }
  for (std::size_t j = 0; j < ny_; ++j) {
    if (j == 0 && abuts_axis()) continue;
    m = std::max({m, std::abs(at(0, j)), std::abs(at(nx_ - 1, j))});
  }
  return m;
}

double rayleigh_quotient(const GridFunction& u, const EigenParams& ep) {
  check_p(ep.p);
  const double num_exp = ep.p * ep.gamma1;
  const double den_exp = ep.p * ep.gamma2 / (ep.p - 1.0);
  std::vector<double> num(u.ny());
  std::vector<double> den(u.ny());
  for_each_gradient_row(u, [&](std::size_t j, std::vector<double>& g2) {
    std::vector<double> scratch;
    const double y = u.y(j);
    num[j] = weight(y, num_exp) * row_gradient_sum(g2, ep.p);
    den[j] = weight(y, den_exp) * row_power_sum(u.values().data() + j * u.nx(), u.nx(), ep.p, scratch);
  });
  const double d = ordered_total(den);
  if (!(d > 0.0)) throw Error(ErrorCode::Domain, "Rayleigh quotient of the zero function");
  return ordered_total(num) / d;
}

SobolevSides sobolev_check(const GridFunction& u, const WeightPair& w) {
  w.require_sharp();
  if (u.rim_max() != 0.0) throw Error(ErrorCode::Domain, "grid function must vanish on the lattice rim");
  const double q = (w.beta() + 2.0) / (w.alpha() + 1.0);
  std::vector<double> tv(u.ny());
  std::vector<double> mass(u.ny());
  for_each_gradient_row(u, [&](std::size_t j, std::vector<double>& g2) {
    std::vector<double> scratch;
    const double y = u.y(j);
    tv[j] = weight(y, w.alpha()) * row_gradient_sum(g2, 1.0);
    mass[j] = weight(y, w.beta()) * row_power_sum(u.values().data() + j * u.nx(), u.nx(), q, scratch);
  });
  const double cell = u.spacing() * u.spacing();
  SobolevSides s;
  s.lhs = ordered_total(tv) * cell;
  const double m = ordered_total(mass) * cell;
  s.rhs = (m > 0.0) ? mu_closed_form(w) * std::pow(m, 1.0 / q) : 0.0;
  return s;
}

}  // namespace wiso
