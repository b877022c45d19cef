#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wiso/config_io.hpp"
#include "wiso/error.hpp"
#include "wiso/euler_flow.hpp"
#include "wiso/geometry.hpp"
#include "wiso/harness.hpp"
#include "wiso/optimal_set.hpp"
#include "wiso/spectral.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

using Fields = std::vector<std::pair<std::string, nlohmann::json>>;

void emit(const Fields& fields, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) j[k] = v;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "key,value\n";
  for (const auto& [k, v] : fields) {
    if (v.is_number_float()) std::cout << k << "," << wiso::format_real(v.get<double>()) << "\n";
    else if (v.is_string()) std::cout << k << "," << v.get<std::string>() << "\n";
    else std::cout << k << "," << v.dump() << "\n";
  }
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else wiso::write_text_file(path, text);
}

void print_summary(const wiso::SweepReport& r) {
  std::printf("%-12s %s cases=%zu failures=%zu min_margin=%s runtime_ms=%.1f\n", r.suite.c_str(),
              r.passed() ? "PASS" : "FAIL", r.summary.cases, r.summary.failures,
              wiso::format_real(r.summary.min_margin).c_str(), r.summary.runtime_ms);
}

int exit_code_for(const wiso::Error& e) {
  return e.code() == wiso::ErrorCode::NonConvergence ? kExitFail : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted isoperimetric constants, optimal sets and verification suites in the upper half-plane"};
  app.require_subcommand(1);

  double alpha = 0.0, beta = 0.0, p = 2.0, gamma1 = 0.0, gamma2 = 0.0, area = 1.0, step_tol = 1e-10;
  int n = 256;
  std::optional<std::uint64_t> seed;
  std::string config_path, out, format = "csv", suite, file, steiner_out;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_weights = [&](CLI::App* c) {
    c->add_option("--alpha", alpha, "Perimeter weight exponent")->required();
    c->add_option("--beta", beta, "Area weight exponent")->required();
  };
  auto add_eigen = [&](CLI::App* c) {
    c->add_option("--p", p, "Laplacian exponent p > 1")->required();
    c->add_option("--gamma1", gamma1, "Gradient weight parameter")->required();
    c->add_option("--gamma2", gamma2, "Mass weight parameter")->required();
  };

  auto* mu_cmd = app.add_subcommand("mu", "Classify (alpha, beta) and print the sharp constant");
  add_weights(mu_cmd);
  add_format(mu_cmd);

  auto* profile_cmd = app.add_subcommand("profile", "Sample the optimal profile f(y) as CSV");
  add_weights(profile_cmd);
  profile_cmd->add_option("--n", n, "Number of intervals (>= 8)");
  profile_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* shoot_cmd = app.add_subcommand("shoot", "Integrate the extremal from the apex and write its trajectory");
  add_weights(shoot_cmd);
  shoot_cmd->add_option("--step-tol", step_tol, "Local error bound per unit arclength");
  shoot_cmd->add_option("--out", out, "Trajectory CSV file (default stdout)");

  auto* cheeger_cmd = app.add_subcommand("cheeger", "Cheeger lower bound for a domain of given weighted area");
  add_weights(cheeger_cmd);
  cheeger_cmd->add_option("--area", area, "Weighted area of the domain")->required();
  add_format(cheeger_cmd);

  auto* eigen_cmd = app.add_subcommand("eigen-bound", "Lower bound (h/p)^p on the first eigenvalue");
  add_eigen(eigen_cmd);
  eigen_cmd->add_option("--area", area, "Weighted area of the domain")->required();
  add_format(eigen_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run one verification suite");
  verify_cmd->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(wiso::kSuiteNames), std::end(wiso::kSuiteNames))));
  verify_cmd->add_option("--config", config_path, "JSON config supplying suite parameters");
  verify_cmd->add_option("--seed", seed, "Seed for randomized suites");
  verify_cmd->add_option("--n", n, "Case count for the stress and cheeger suites");
  verify_cmd->add_option("--out", out, "Directory for report files");
  add_format(verify_cmd);

  auto* report_cmd = app.add_subcommand("report", "Run every suite enabled by the config and write reports");
  report_cmd->add_option("--config", config_path, "JSON config (defaults: every suite)");
  report_cmd->add_option("--seed", seed, "Seed for randomized suites");
  report_cmd->add_option("--out", out, "Directory for report files (overrides the config)");
  auto* report_format = report_cmd->add_option("--format", format, "Per-suite record format");
  report_format->check(CLI::IsMember({"csv", "json"}));

  auto* polygon_cmd = app.add_subcommand("polygon", "Weighted functionals of a polygon file");
  add_weights(polygon_cmd);
  polygon_cmd->add_option("--file", file, "Polygon text file")->required();
  polygon_cmd->add_option("--steiner", steiner_out, "Write the Steiner symmetrization to this file");
  add_format(polygon_cmd);

  auto* grid_cmd = app.add_subcommand("grid", "Rayleigh quotient and Sobolev sides of a grid-function file");
  grid_cmd->add_option("--file", file, "Grid function text file")->required();
  add_eigen(grid_cmd);
  add_format(grid_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*mu_cmd) {
      const wiso::WeightPair w(alpha, beta);
      Fields f{{"alpha", alpha}, {"beta", beta}, {"gamma", w.gamma()},
               {"class", std::string(wiso::weight_class_name(w.classify()))}};
      switch (w.classify()) {
        case wiso::WeightClass::Sharp:
          f.emplace_back("mu", wiso::mu_closed_form(w));
          f.emplace_back("attained", true);
          break;
        case wiso::WeightClass::BoundaryNoMin:
          f.emplace_back("mu", beta + 1.0);
          f.emplace_back("attained", false);
          break;
        default:
          f.emplace_back("mu", 0.0);
          f.emplace_back("attained", false);
      }
      emit(f, format);
      return kExitPass;
    }
    if (*profile_cmd) {
      write_or_print(out, wiso::profile_csv(wiso::OptimalProfile(wiso::WeightPair(alpha, beta), n)));
      return kExitPass;
    }
    if (*shoot_cmd) {
      wiso::ShootConfig sc;
      sc.step_tol = step_tol;
      const wiso::WeightPair w(alpha, beta);
      const wiso::EulerTrajectory traj = wiso::shoot(w, sc);
      write_or_print(out, wiso::trajectory_csv(traj));
      std::fprintf(stderr, "endpoint_x=%s length=%s ratio=%s rejected_steps=%zu\n",
                   wiso::format_real(traj.endpoint_x).c_str(), wiso::format_real(traj.length).c_str(),
                   wiso::format_real(traj.weighted_perimeter / std::pow(traj.weighted_area, w.area_exponent())).c_str(),
                   traj.rejected_steps);
      return kExitPass;
    }
    if (*cheeger_cmd) {
      const auto b = wiso::cheeger_lower_bound(wiso::WeightPair(alpha, beta), area);
      emit({{"alpha", alpha}, {"beta", beta}, {"area", area}, {"t_match", b.t_match}, {"h", b.h}}, format);
      return kExitPass;
    }
    if (*eigen_cmd) {
      const wiso::EigenParams ep{p, gamma1, gamma2};
      const wiso::WeightPair w = wiso::param_map(ep);
      const double bound = wiso::eigenvalue_lower_bound(ep, area);
      emit({{"p", p}, {"gamma1", gamma1}, {"gamma2", gamma2}, {"alpha", w.alpha()}, {"beta", w.beta()},
            {"area", area}, {"h", wiso::cheeger_lower_bound(w, area).h}, {"lambda_lower_bound", bound}},
           format);
      return kExitPass;
    }
    if (*polygon_cmd) {
      const wiso::WeightPair w(alpha, beta);
      const auto poly = wiso::parse_polygon(wiso::read_text_file(file));
      const auto sym = wiso::steiner_symmetrize(poly);
      Fields f{{"vertices", poly.vertex_count()},
               {"perimeter", wiso::weighted_perimeter(poly, w)},
               {"area", wiso::weighted_area(poly, w)},
               {"ratio", wiso::isoperimetric_ratio(poly, w)},
               {"steiner_perimeter", wiso::weighted_perimeter(sym, w)},
               {"steiner_area", wiso::weighted_area(sym, w)}};
      if (w.is_sharp()) f.emplace_back("mu", wiso::mu_closed_form(w));
      if (!steiner_out.empty()) wiso::write_text_file(steiner_out, wiso::serialize_polygon(sym));
      emit(f, format);
      return kExitPass;
    }
    if (*grid_cmd) {
      const wiso::EigenParams ep{p, gamma1, gamma2};
      const auto u = wiso::parse_grid(wiso::read_text_file(file));
      Fields f{{"rayleigh_quotient", wiso::rayleigh_quotient(u, ep)}};
      const wiso::WeightPair w = wiso::param_map(ep);
      if (w.is_sharp() && u.rim_max() == 0.0) {
        const auto s = wiso::sobolev_check(u, w);
        f.emplace_back("sobolev_lhs", s.lhs);
        f.emplace_back("sobolev_rhs", s.rhs);
      }
      emit(f, format);
      return kExitPass;
    }

    // verify / report
    wiso::RunConfig cfg = config_path.empty() ? wiso::default_config() : wiso::load_config(config_path);
    if (seed) cfg.stress.seed = cfg.cheeger.seed = cfg.spectral.seed = *seed;
    std::vector<wiso::SweepReport> reps;
    std::string dir = out;
    if (*verify_cmd) {
      if (verify_cmd->count("--n")) {
        if (n <= 0) throw wiso::Error(wiso::ErrorCode::Config, "--n must be positive");
        cfg.stress.count = cfg.cheeger.count = n;
      }
      reps.push_back(wiso::run_suite(suite, cfg));
    } else {
      if (report_format->count() == 0) format = cfg.format;
      if (dir.empty()) dir = cfg.output_dir;
      reps = wiso::run_all(cfg);
    }
    bool ok = !reps.empty();
    for (const auto& r : reps) {
      print_summary(r);
      ok = ok && r.passed();
    }
    if (!dir.empty()) wiso::write_reports(reps, dir, format);
    return ok ? kExitPass : kExitFail;
  } catch (const wiso::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
}
