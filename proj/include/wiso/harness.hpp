#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wiso/optimal_set.hpp"
#include "wiso/polygon.hpp"
#include "wiso/special_functions.hpp"
#include "wiso/rng.hpp"
#include "wiso/spectral.hpp"
#include "wiso/weights.hpp"

namespace wiso {

/// One evaluated case. `values` line up with SweepReport::columns. The
/// margin is the remaining slack of the case's weakest assertion after its
/// tolerance is applied, so a case passes exactly when margin >= 0.
struct CaseRecord {
  std::vector<double> values;
  double margin = 0.0;
  bool pass = true;
  std::string note;
};

struct SweepSummary {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double min_margin = 0.0;
  double max_violation = 0.0;  // max(0, -min_margin)
  double runtime_ms = 0.0;
};

struct SweepReport {
  std::string suite;
  std::string grid;  // human-readable parameter grid
  std::vector<std::string> columns;
  std::vector<CaseRecord> records;
  SweepSummary summary;

  /// Adds a record whose pass flag follows its margin.
  void add(std::vector<double> values, double margin, std::string note = {});
  /// Recomputes the summary from the records.
  void finalize(double runtime_ms);
  /// True when there is at least one record and every record passes; does
  /// not depend on finalize().
  bool passed() const noexcept;
};

/// (alpha, beta) pairs with alpha in {0, 0.5, 1, 2} and beta in
/// {alpha, 1.5 alpha, 2 alpha}: twelve entries with the repeats at alpha = 0
/// kept, or ten when `unique` drops them.
std::vector<WeightPair> sharp_sweep_grid(bool unique = false);

// ---------------------------------------------------------------- rectangles

struct RectangleParams {
  std::vector<WeightPair> weights{{1.0, 0.0}, {2.0, 1.0}, {3.0, 1.0}, {0.0, 0.0}, {1.0, 1.5}, {0.5, 2.0}};
  std::vector<double> t_values{0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 1e4};
  double agreement_tol = 1e-12;
};

/// R of the box (0, t) x (0, 1) in closed form.
double rectangle_ratio_closed(const WeightPair& w, double t);

/// Exact polygon functionals against the closed form, plus the limit
/// behaviour of each weight class. Throws Error(Domain) for an empty or
/// non-increasing t list.
SweepReport rectangle_sequence(const WeightPair& w, const std::vector<double>& t_values, double agreement_tol = 1e-12);

/// Appends the records of `part` to `into`; columns must match.
void append_records(SweepReport& into, const SweepReport& part);

// -------------------------------------------------------------------- balls

struct BallParams {
  std::vector<WeightPair> weights{{0.0, 1.0}, {1.0, 3.0}, {0.5, 2.0}, {0.0, 0.0}};
  std::vector<double> t_values{2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
  int n_poly = 720;
  double slope_rel_tol = 0.05;
  double bound_factor = 1.05;
};

/// alpha - beta (1 + alpha) / (2 + beta).
double ball_exponent(const WeightPair& w);

/// Inscribed regular n_poly-gon of the unit disk centred at (0, t).
HalfPlanePolygon disk_polygon(double t, int n_poly);

/// R of unit disks lifted to height t. The tail is the last decade
/// [t_max / 10, t_max]. C is fitted at the first tail point and every tail
/// point must satisfy R <= bound_factor * C t^e; the least-squares log-log
/// slope of the tail must be within slope_rel_tol |e| (+1e-9) of e, and when
/// 2 alpha < beta the tail must strictly decrease. Throws Error(Domain) if
/// some t < 2, the list is not increasing, or n_poly < 3.
SweepReport ball_sequence(const WeightPair& w, const std::vector<double>& t_values, int n_poly = 720,
                          double slope_rel_tol = 0.05, double bound_factor = 1.05);

// ------------------------------------------------------------------ lemma A

struct LemmaAParams {
  std::vector<double> alphas{0.5, 1.0, 2.0};
  int z_grid = 1000;
  int beta_grid = 1000;
  double identity_tol = 1e-12;
};

/// g(z, beta) = alpha (1 - z^(alpha+1) + z^(beta+1-alpha) - z^(beta+2))
///            + (beta+1-alpha) (-z + z^(beta+1-alpha) - z^(alpha+1) + z^(beta+1)),
/// evaluated term by term.
double lemma_a_g(double z, double alpha, double beta);

/// The same function regrouped as
/// alpha (1 - z^(alpha+1)) (1 + z^c) - c (1 + z^alpha) z (1 - z^(c-1)), c = beta+1-alpha,
/// with expm1 for the differences, which keeps relative accuracy near z = 1.
double lemma_a_g_stable(double z, double alpha, double beta);

/// Positivity of g on the open grid z_k = k / (z_grid + 1), k = 1..z_grid,
/// beta_m evenly spaced over [alpha, 2 alpha] inclusive; one record per beta.
/// Also checks the beta = alpha identity and the limits g(0) = alpha,
/// g(1) = 0. Throws Error(Domain) if alpha <= 0 or a grid is below 100.
SweepReport lemma_a_sweep(double alpha, int z_grid, int beta_grid, double identity_tol = 1e-12);

// ------------------------------------------------------------------- stress

enum class PolygonKind { ConvexHull, Star, Boxes, InscribedOptimal };

const char* polygon_kind_name(PolygonKind k) noexcept;

/// One random polygon of the given kind. May throw Error(InvalidPolygon) for
/// a degenerate draw; callers redraw. InscribedOptimal subsamples `prof`
/// (whose interval count must be a multiple of 64) and throws Error(Domain)
/// when it is null.
HalfPlanePolygon random_polygon(Rng& rng, PolygonKind kind, const OptimalProfile* prof = nullptr);

/// The kind mix used by the stress suite: 30% hulls, 30% stars, 25% boxes,
/// 15% inscribed optimal sets.
PolygonKind draw_polygon_kind(Rng& rng);

struct StressParams {
  std::vector<WeightPair> weights = sharp_sweep_grid(true);
  int count = 10000;
  std::uint64_t seed = 42;
  double ratio_tol = 1e-9;
  double steiner_tol = 1e-12;
};

/// R >= mu - ratio_tol on `count` random polygons, and Steiner
/// symmetrization keeps A_beta (relative steiner_tol) and does not raise
/// P_alpha (relative steiner_tol). Degenerate draws are redrawn and counted
/// in the grid description. Throws Error(Region) for non-sharp weights.
SweepReport random_polygon_stress(const WeightPair& w, int count, std::uint64_t seed, double ratio_tol = 1e-9,
                                  double steiner_tol = 1e-12);

// ------------------------------------------------------------------ oracles

struct OracleParams {
  QuadratureConfig quadrature;
  std::vector<WeightPair> weights = sharp_sweep_grid();
  double step_tol = 1e-10;
  double mu_rel_tol = 1e-6;
  double boundary_tol = 1e-6;
  int profile_intervals = 512;
};

/// Closed-form mu, quadrature ratio of the optimal set and Euler-shooting
/// ratio agree; the shooting endpoint and curve match the profile.
SweepReport oracle_sweep(const OracleParams& params);

struct DualMuParams {
  QuadratureConfig quadrature;
  int grid_n = 20;
  double alpha_max = 3.0;
  double rel_tol = 1e-9;
};

/// Quadrature ratio of the optimal set against the closed form on a grid_n
/// by grid_n grid, alpha in [0, alpha_max], beta in [alpha, min(2 alpha, alpha + 0.99)].
SweepReport dual_mu_grid(const DualMuParams& params);

struct InscribedParams {
  QuadratureConfig quadrature;
  std::vector<WeightPair> weights{{0.0, 0.0}};
  std::vector<int> n_values{128, 512, 2048};
  double final_gap = 1e-5;
};

/// R(sample_optimal_polygon(n)) - mu is positive, decreasing in n and at
/// most final_gap at the largest n.
SweepReport inscribed_convergence(const InscribedParams& params);

struct HalfCircleParams {
  QuadratureConfig quadrature;
  std::vector<double> alphas{1.0, 0.0, 2.5};
  int samples = 2001;
  double profile_tol = 1e-10;
  double kappa_tol = 1e-10;
  double circle_tol = 1e-8;
};

/// At alpha == beta the optimal set is the unit half-disk: profile_f equals
/// sqrt(1 - y^2) and the extremal has unit curvature.
SweepReport half_circle(const HalfCircleParams& params);

// ------------------------------------------------------------------ cheeger

struct CheegerParams {
  std::vector<WeightPair> weights{{0.0, 0.0}, {1.0, 1.5}, {0.5, 0.75}, {2.0, 3.0}};
  int count = 10000;
  std::uint64_t seed = 7;
  double exact_tol = 1e-12;
};

/// Hand values of the bound and of (h/p)^p, the area scaling law, and
/// subset_ratio_check >= h on `count` random subsets spread over the weights.
SweepReport cheeger_suite(const CheegerParams& params);

// ----------------------------------------------------------------- spectral

struct SpectralParams {
  std::vector<int> resolutions{128, 256, 512};
  int rayleigh_count = 20;
  int rayleigh_resolution = 128;
  std::uint64_t seed = 11;
  /// Cycled over the random Rayleigh cases; each must lie in the admissible region.
  std::vector<EigenParams> eigen_params{{2.0, 0.0, 0.0}, {2.0, 0.5, 0.5}, {2.0, 0.25, 0.75}, {2.0, 1.0, 0.5}};
  double sobolev_slack = 0.01;
  double rayleigh_slack = 0.05;
};

/// u = (1 - |z - c|^2 / r^2)^2 inside the disk, sampled on an n by n grid
/// covering [cx - 1.25 r, cx + 1.25 r] x [cy - 1.25 r, cy + 1.25 r].
GridFunction radial_bump(double cx, double cy, double r, std::size_t n);

/// Continuous piecewise-linear step of the gauge of the optimal set:
/// 1 for gauge <= 1 - width, 0 for gauge >= 1, on an n by n grid abutting the axis.
GridFunction optimal_set_indicator(const WeightPair& w, double width, std::size_t n);

/// Discrete Sobolev ratios on bumps across the resolutions, the sharpness
/// witness, and Rayleigh quotients of random sine combinations against
/// (1 - rayleigh_slack) (h/p)^p.
SweepReport spectral_suite(const SpectralParams& params);

// -------------------------------------------------------------------- runs

inline constexpr const char* kSuiteNames[] = {"rectangle", "ball",      "lemma_a",     "stress",  "oracles",
                                              "dual_mu",   "inscribed", "half_circle", "cheeger", "spectral"};

struct RunConfig;

/// Runs one suite by name with the parameters held in cfg. Throws
/// Error(Config) for an unknown name.
SweepReport run_suite(const std::string& name, const RunConfig& cfg);

/// Runs every enabled suite in cfg in the canonical order.
std::vector<SweepReport> run_all(const RunConfig& cfg);

}  // namespace wiso
