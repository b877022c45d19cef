#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wiso/euler_flow.hpp"
#include "wiso/harness.hpp"
#include "wiso/optimal_set.hpp"
#include "wiso/polygon.hpp"
#include "wiso/spectral.hpp"

namespace wiso {

/// "%.17g" rendering; parsing it back yields the same double.
std::string format_real(double v);

struct RunConfig {
  std::string output_dir = "wiso_out";
  std::string format = "csv";  // per-suite record files: csv or json
  std::uint64_t seed = 0;      // default for suites without their own seed
  QuadratureConfig quadrature;
  std::set<std::string> enabled;  // suite names to run

  RectangleParams rectangle;
  BallParams ball;
  LemmaAParams lemma_a;
  StressParams stress;
  OracleParams oracles;
  DualMuParams dual_mu;
  InscribedParams inscribed;
  HalfCircleParams half_circle;
  CheegerParams cheeger;
  SpectralParams spectral;
};

/// Every suite enabled with its default parameters.
RunConfig default_config();

/// Strict JSON config:
///   {"output_dir": s, "format": "csv"|"json", "seed": n,
///    "quadrature": {"level", "abs_tol", "max_evals"},
///    "suites": {"<suite>": {"enabled": b, "seed": n, "tolerances": {...}, ...}}}
/// When "suites" is present only the listed suites run. Syntax errors throw
/// Error(Parse) with line and column; unknown or duplicate keys, wrong types
/// and parameters outside their regions throw Error(Config) naming the JSON
/// path and, for weights, the violated inequality.
RunConfig parse_config(std::string_view text);

/// Canonical config document with every field spelled out and every suite
/// listed with its "enabled" flag; parse_config of the result reproduces cfg.
std::string serialize_config(const RunConfig& cfg);

/// Reads and parses a config file; Error(Io) if it cannot be read.
RunConfig load_config(const std::string& path);

/// One vertex per line as "x y"; a blank line ends a loop. Lines starting
/// with '#' are ignored. Throws Error(Parse) naming the line for malformed
/// input, negative y, or a loop with fewer than 3 vertices, then validates
/// the loops as HalfPlanePolygon::from_loops does.
HalfPlanePolygon parse_polygon(std::string_view text);

/// Canonical text form: "x y\n" per vertex, 17 significant digits, one
/// blank line between loops.
std::string serialize_polygon(const HalfPlanePolygon& poly);

/// Header "nx ny spacing x0 y0", then ny lines of nx values (row j = height y0 + j spacing).
GridFunction parse_grid(std::string_view text);
std::string serialize_grid(const GridFunction& u);

/// "# alpha=.. beta=.. gamma=.." then "y,f" rows at the profile samples.
std::string profile_csv(const OptimalProfile& prof);

/// "# alpha=.. beta=.. lambda=.. d=.. step_tol=.." then "s,x,y,theta,kappa" rows.
std::string trajectory_csv(const EulerTrajectory& traj);

/// Header "case,<columns>,margin,pass,note" and one row per record. No
/// timing data, so repeated runs give identical bytes.
std::string report_csv(const SweepReport& rep);

/// The same records as a JSON document.
std::string report_json(const SweepReport& rep);

/// JSON array of {suite, cases, failures, min_margin, runtime_ms}.
std::string summary_json(const std::vector<SweepReport>& reps);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// Writes <dir>/<suite>.<csv|json> for every report plus <dir>/summary.json,
/// creating the directory if needed.
void write_reports(const std::vector<SweepReport>& reps, const std::string& dir, const std::string& format);

}  // namespace wiso
