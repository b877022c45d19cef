#include "wiso/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wiso/error.hpp"

namespace wiso {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "E_DOMAIN";
    case ErrorCode::InvalidPolygon: return "E_INVALID_POLYGON";
    case ErrorCode::NonConvergence: return "E_NONCONVERGENCE";
    case ErrorCode::Region: return "E_REGION";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Config: return "E_CONFIG";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_UNKNOWN";
}

namespace {

// Lanczos g = 607/128, 15-term series (Godfrey). tmp offset is g + 1/2.
constexpr double kLanczosOffset = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

double lanczos_log_gamma(double x) {
  double tmp = x + kLanczosOffset;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = kLanczosC0;
  double y = x;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(kSqrtTwoPi * ser / x);
}

// Half-width of the truncated transform interval. At |t| = 6 the nearer
// endpoint distance exp(-pi sinh 6) is about 1e-275, still a normal double.
constexpr double kHalfWidth = 6.0;
constexpr int kBaseLevel = 3;
constexpr int kMinCompareLevel = 5;

struct Node {
  double x;
  double xc;
  double weight;
};

// Abscissa and weight of the tanh-sinh map x = (1 + tanh(pi/2 sinh t)) / 2.
Node de_node(double t) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * std::abs(u));
  const double near = e / (1.0 + e);
  const double far = 1.0 / (1.0 + e);
  // dx/dt = (pi/4) cosh t sech^2 u, sech^2 u = 4e / (1+e)^2
  const double w = std::numbers::pi * std::cosh(t) * e / ((1.0 + e) * (1.0 + e));
  if (t < 0.0) return {near, far, w};
  return {far, near, w};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (level < 3 || level > 12)
    throw Error(ErrorCode::Domain, "quadrature level must lie in [3, 12], got " + std::to_string(level));
  if (!(abs_tol > 0.0)) throw Error(ErrorCode::Domain, "quadrature abs_tol must be positive");
  if (max_evals < (std::size_t{1} << level))
    throw Error(ErrorCode::Domain, "quadrature max_evals must be at least 2^level");
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw Error(ErrorCode::Domain, "log_gamma requires a finite x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
  return lanczos_log_gamma(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::Domain, "beta requires finite a > 0 and b > 0");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

QuadratureResult integrate_de(const UnitIntegrand& f, const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult res;

  auto sample = [&](double t) {
    const Node n = de_node(t);
    if (n.x <= 0.0 || n.xc <= 0.0 || n.weight == 0.0) return 0.0;
    const double v = f(n.x, n.xc);
    ++res.evaluations;
    if (!std::isfinite(v))
      throw Error(ErrorCode::NonConvergence, "integrand returned a non-finite value");
    return n.weight * v;
  };

  // Trapezoidal sums over [-T, T]; each level halves the step and only adds
  // the new odd-indexed nodes.
  int panels = 1 << kBaseLevel;
  double h = 2.0 * kHalfWidth / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) sum += sample(-kHalfWidth + i * h);
  double estimate = h * sum;
  res.level_reached = kBaseLevel;

  for (int level = kBaseLevel + 1; level <= cfg.level; ++level) {
    if (res.evaluations + static_cast<std::size_t>(panels) > cfg.max_evals) break;
    h *= 0.5;
    for (int i = 1; i < 2 * panels; i += 2) sum += sample(-kHalfWidth + i * h);
    panels *= 2;
    const double next = h * sum;
    res.error_estimate = std::abs(next - estimate);
    estimate = next;
    res.level_reached = level;
    if (level >= kMinCompareLevel && res.error_estimate <= cfg.abs_tol) {
      res.converged = true;
      break;
    }
  }
  res.value = estimate;
  return res;
}

QuadratureResult integrate_de(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
  return integrate_de(UnitIntegrand([&f](double x, double) { return f(x); }), cfg);
}

double integrate_de_checked(const UnitIntegrand& f, const QuadratureConfig& cfg) {
  const QuadratureResult r = integrate_de(f, cfg);
  if (!r.converged)
    throw Error(ErrorCode::NonConvergence,
                "double-exponential quadrature missed abs_tol (estimate " +
                    std::to_string(r.error_estimate) + ")");
  return r.value;
}

double mean_power(double y1, double y2, double q) {
  const double lo = std::min(y1, y2);
  const double hi = std::max(y1, y2);
  if (hi == lo) return std::pow(lo, q);
  if (lo == 0.0) return std::pow(hi, q) / (q + 1.0);
  if (hi >= 2.0 * lo)
    return (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)) / ((q + 1.0) * (hi - lo));
  const double r = (hi - lo) / lo;
  return std::pow(lo, q) * std::expm1((q + 1.0) * std::log1p(r)) / ((q + 1.0) * r);
}

}  // namespace wiso
