#include "wiso/config_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "wiso/error.hpp"

namespace wiso {

using nlohmann::json;

namespace {

// ------------------------------------------------------------ json helpers

std::string join_path(const std::string& base, const std::string& key) { return base + "/" + key; }

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Config, (path.empty() ? "/" : path) + ": " + what);
}

// A JSON object whose keys must all be consumed; leftovers are unknown keys.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) config_error(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) config_error(join_path(path_, key), "must be a number");
    return v->get<double>();
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) config_error(join_path(path_, key), "must be an integer");
    return v->get<long long>();
  }

  std::optional<std::uint64_t> seed(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) config_error(join_path(path_, key), "must be a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) config_error(join_path(path_, key), "must be true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) config_error(join_path(path_, key), "must be a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) config_error(join_path(path_, key), "must be a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) config_error(join_path(path_, key) + "/" + std::to_string(i), "must be a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) config_error(join_path(path_, key), "must be a non-empty array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number_integer())
        config_error(join_path(path_, key) + "/" + std::to_string(i), "must be an integer");
      out.push_back((*v)[i].get<int>());
    }
    return out;
  }

  // [[alpha, beta], ...]; every pair must be a valid weight pair, and a sharp
  // one when `sharp` is set.
  std::vector<WeightPair> weights(const std::string& key, std::vector<WeightPair> fallback, bool sharp) {
    const json* v = get(key);
    if (v) {
      if (!v->is_array() || v->empty()) config_error(join_path(path_, key), "must be a non-empty array of [alpha, beta]");
      fallback.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        const std::string p = join_path(path_, key) + "/" + std::to_string(i);
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
          config_error(p, "must be [alpha, beta]");
        try {
          fallback.emplace_back(e[0].get<double>(), e[1].get<double>());
        } catch (const Error& err) {
          config_error(p, err.what());
        }
      }
    }
    if (sharp)
      for (std::size_t i = 0; i < fallback.size(); ++i) {
        const std::string bad = fallback[i].sharp_violation();
        if (!bad.empty())
          config_error(join_path(path_, key) + "/" + std::to_string(i),
                       "weights (" + format_real(fallback[i].alpha()) + ", " + format_real(fallback[i].beta()) +
                           ") violate " + bad);
      }
    return fallback;
  }

  // Throws on any key that no getter asked for.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) config_error(join_path(path_, it.key()), "unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) config_error(path, what);
}

// Parses with a callback that rejects repeated keys, reporting their path.
json parse_strict(std::string_view text) {
  struct Frame {
    bool array = false;
    std::size_t index = 0;
    std::string segment;
    std::string key;
    std::set<std::string> keys;
  };
  std::vector<Frame> stack;
  auto path = [&] {
    std::string p;
    for (std::size_t i = 1; i < stack.size(); ++i) p += "/" + stack[i].segment;
    return p;
  };
  auto child_segment = [&]() -> std::string {
    if (stack.empty()) return {};
    const Frame& top = stack.back();
    return top.array ? std::to_string(top.index) : top.key;
  };
  auto element_done = [&] {
    if (!stack.empty() && stack.back().array) ++stack.back().index;
  };
  json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start:
      case json::parse_event_t::array_start: {
        Frame f;
        f.array = ev == json::parse_event_t::array_start;
        f.segment = child_segment();
        stack.push_back(std::move(f));
        break;
      }
      case json::parse_event_t::key: {
        Frame& top = stack.back();
        const std::string k = parsed.get<std::string>();
        if (!top.keys.insert(k).second) config_error(path(), "duplicate key '" + k + "'");
        top.key = k;
        break;
      }
      case json::parse_event_t::object_end:
      case json::parse_event_t::array_end:
        stack.pop_back();
        element_done();
        break;
      case json::parse_event_t::value:
        element_done();
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(ErrorCode::Parse, "config line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

void parse_quadrature(Block b, QuadratureConfig& q) {
  q.level = static_cast<int>(b.integer("level", q.level));
  q.abs_tol = b.number("abs_tol", q.abs_tol);
  q.max_evals = static_cast<std::size_t>(b.integer("max_evals", static_cast<long long>(q.max_evals)));
  b.finish();
  try {
    q.validate();
  } catch (const Error& e) {
    config_error(b.path(), e.what());
  }
}

double tolerance(Block& t, const std::string& key, double fallback) {
  const double v = t.number(key, fallback);
  require(v >= 0.0 && std::isfinite(v), join_path(t.path(), key), "must be a finite number >= 0");
  return v;
}

template <class Fn>
void with_tolerances(Block& b, Fn&& fn) {
  if (const json* t = b.get("tolerances")) {
    Block tb(*t, join_path(b.path(), "tolerances"));
    fn(tb);
    tb.finish();
  }
}

bool positive_increasing(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0) || (i > 0 && !(v[i] > v[i - 1]))) return false;
  return true;
}

void parse_suite(const std::string& name, Block b, RunConfig& cfg, std::optional<std::uint64_t> global_seed) {
  const std::string& p = b.path();
  auto seed_or = [&](std::uint64_t fallback) {
    if (auto s = b.seed("seed")) return *s;
    return global_seed.value_or(fallback);
  };
  if (name == "rectangle") {
    auto& r = cfg.rectangle;
    r.weights = b.weights("weights", r.weights, false);
    r.t_values = b.numbers("t_values", r.t_values);
    require(positive_increasing(r.t_values), join_path(p, "t_values"), "must be positive and strictly increasing");
    with_tolerances(b, [&](Block& t) { r.agreement_tol = tolerance(t, "agreement", r.agreement_tol); });
  } else if (name == "ball") {
    auto& r = cfg.ball;
    r.weights = b.weights("weights", r.weights, false);
    r.t_values = b.numbers("t_values", r.t_values);
    require(positive_increasing(r.t_values) && r.t_values.front() >= 2.0, join_path(p, "t_values"),
            "must be strictly increasing with t >= 2");
    r.n_poly = static_cast<int>(b.integer("n_poly", r.n_poly));
    require(r.n_poly >= 3, join_path(p, "n_poly"), "must be at least 3");
    with_tolerances(b, [&](Block& t) {
      r.slope_rel_tol = tolerance(t, "slope_rel", r.slope_rel_tol);
      r.bound_factor = tolerance(t, "bound_factor", r.bound_factor);
    });
  } else if (name == "lemma_a") {
    auto& r = cfg.lemma_a;
    if (b.has("alpha") && b.has("alphas")) config_error(p, "give either 'alpha' or 'alphas', not both");
    if (b.has("alpha")) r.alphas = {b.number("alpha", 1.0)};
    r.alphas = b.numbers("alphas", r.alphas);
    for (double a : r.alphas) require(a > 0.0 && std::isfinite(a), join_path(p, "alpha"), "must satisfy alpha > 0");
    r.z_grid = static_cast<int>(b.integer("z_grid", r.z_grid));
    r.beta_grid = static_cast<int>(b.integer("beta_grid", r.beta_grid));
    require(r.z_grid >= 100, join_path(p, "z_grid"), "must be at least 100");
    require(r.beta_grid >= 100, join_path(p, "beta_grid"), "must be at least 100");
    with_tolerances(b, [&](Block& t) { r.identity_tol = tolerance(t, "identity", r.identity_tol); });
  } else if (name == "stress") {
    auto& r = cfg.stress;
    r.weights = b.weights("weights", r.weights, true);
    r.count = static_cast<int>(b.integer("count", r.count));
    require(r.count > 0, join_path(p, "count"), "must be positive");
    r.seed = seed_or(r.seed);
    with_tolerances(b, [&](Block& t) {
      r.ratio_tol = tolerance(t, "ratio", r.ratio_tol);
      r.steiner_tol = tolerance(t, "steiner", r.steiner_tol);
    });
  } else if (name == "oracles") {
    auto& r = cfg.oracles;
    r.weights = b.weights("weights", r.weights, true);
    r.step_tol = b.number("step_tol", r.step_tol);
    require(r.step_tol > 0.0, join_path(p, "step_tol"), "must be positive");
    r.profile_intervals = static_cast<int>(b.integer("profile_intervals", r.profile_intervals));
    require(r.profile_intervals >= 8, join_path(p, "profile_intervals"), "must be at least 8");
    with_tolerances(b, [&](Block& t) {
      r.mu_rel_tol = tolerance(t, "mu_rel", r.mu_rel_tol);
      r.boundary_tol = tolerance(t, "boundary", r.boundary_tol);
    });
  } else if (name == "dual_mu") {
    auto& r = cfg.dual_mu;
    r.grid_n = static_cast<int>(b.integer("grid_n", r.grid_n));
    require(r.grid_n >= 2, join_path(p, "grid_n"), "must be at least 2");
    r.alpha_max = b.number("alpha_max", r.alpha_max);
    require(r.alpha_max >= 0.0, join_path(p, "alpha_max"), "must be non-negative");
    with_tolerances(b, [&](Block& t) { r.rel_tol = tolerance(t, "rel", r.rel_tol); });
  } else if (name == "inscribed") {
    auto& r = cfg.inscribed;
    r.weights = b.weights("weights", r.weights, true);
    r.n_values = b.integers("n_values", r.n_values);
    for (int n : r.n_values) require(n >= 8, join_path(p, "n_values"), "entries must be at least 8");
    with_tolerances(b, [&](Block& t) { r.final_gap = tolerance(t, "final_gap", r.final_gap); });
  } else if (name == "half_circle") {
    auto& r = cfg.half_circle;
    r.alphas = b.numbers("alphas", r.alphas);
    for (double a : r.alphas) require(a >= 0.0, join_path(p, "alphas"), "entries must satisfy alpha >= 0");
    r.samples = static_cast<int>(b.integer("samples", r.samples));
    require(r.samples >= 2, join_path(p, "samples"), "must be at least 2");
    with_tolerances(b, [&](Block& t) {
      r.profile_tol = tolerance(t, "profile", r.profile_tol);
      r.kappa_tol = tolerance(t, "kappa", r.kappa_tol);
      r.circle_tol = tolerance(t, "circle", r.circle_tol);
    });
  } else if (name == "cheeger") {
    auto& r = cfg.cheeger;
    r.weights = b.weights("weights", r.weights, true);
    r.count = static_cast<int>(b.integer("count", r.count));
    require(r.count >= 0, join_path(p, "count"), "must be non-negative");
    r.seed = seed_or(r.seed);
    with_tolerances(b, [&](Block& t) { r.exact_tol = tolerance(t, "exact", r.exact_tol); });
  } else if (name == "spectral") {
    auto& r = cfg.spectral;
    r.resolutions = b.integers("resolutions", r.resolutions);
    require(r.resolutions.size() >= 2, join_path(p, "resolutions"), "needs at least two entries");
    for (int n : r.resolutions) require(n >= 16, join_path(p, "resolutions"), "entries must be at least 16");
    r.rayleigh_count = static_cast<int>(b.integer("rayleigh_count", r.rayleigh_count));
    r.rayleigh_resolution = static_cast<int>(b.integer("rayleigh_resolution", r.rayleigh_resolution));
    require(r.rayleigh_resolution >= 16, join_path(p, "rayleigh_resolution"), "must be at least 16");
    r.seed = seed_or(r.seed);
    if (const json* e = b.get("eigen_params")) {
      const std::string ep_path = join_path(p, "eigen_params");
      if (!e->is_array() || e->empty()) config_error(ep_path, "must be a non-empty array of [p, gamma1, gamma2]");
      r.eigen_params.clear();
      for (std::size_t i = 0; i < e->size(); ++i) {
        const json& v = (*e)[i];
        const std::string ip = ep_path + "/" + std::to_string(i);
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
          config_error(ip, "must be [p, gamma1, gamma2]");
        const EigenParams ep{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        std::string bad;
        try {
          bad = region_violation(ep);
        } catch (const Error& err) {
          config_error(ip, err.what());
        }
        if (!bad.empty()) config_error(ip, "eigen parameters violate " + bad);
        r.eigen_params.push_back(ep);
      }
    }
    with_tolerances(b, [&](Block& t) {
      r.sobolev_slack = tolerance(t, "sobolev_slack", r.sobolev_slack);
      r.rayleigh_slack = tolerance(t, "rayleigh_slack", r.rayleigh_slack);
    });
  } else {
    config_error(p, "unknown suite '" + name + "'");
  }
  if (!b.boolean("enabled", true)) cfg.enabled.erase(name);
  b.finish();
}

// ------------------------------------------------------------- text helpers

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

// Whitespace-separated reals; nullopt if any token is not a finite number.
std::optional<std::vector<double>> parse_reals(std::string_view line) {
  std::vector<double> out;
  const std::string s(line);
  const char* p = s.c_str();
  for (;;) {
    while (*p == ' ' || *p == '\t') ++p;
    if (*p == '\0') break;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(p, &end);
    if (end == p || errno == ERANGE || !std::isfinite(v) || (*end != '\0' && *end != ' ' && *end != '\t'))
      return std::nullopt;
    out.push_back(v);
    p = end;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::string csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig default_config() {
  RunConfig cfg;
  for (const char* n : kSuiteNames) cfg.enabled.insert(n);
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  const json doc = parse_strict(text);
  RunConfig cfg = default_config();
  Block root(doc, "");
  cfg.output_dir = root.string("output_dir", cfg.output_dir);
  cfg.format = root.string("format", cfg.format);
  require(cfg.format == "csv" || cfg.format == "json", "/format", "must be \"csv\" or \"json\"");
  const std::optional<std::uint64_t> global_seed = root.seed("seed");
  if (global_seed) cfg.seed = *global_seed;
  if (const json* q = root.get("quadrature")) parse_quadrature(Block(*q, "/quadrature"), cfg.quadrature);
  cfg.oracles.quadrature = cfg.dual_mu.quadrature = cfg.inscribed.quadrature = cfg.half_circle.quadrature =
      cfg.quadrature;
  if (global_seed) cfg.stress.seed = cfg.cheeger.seed = cfg.spectral.seed = *global_seed;
  if (const json* s = root.get("suites")) {
    Block suites(*s, "/suites");
    cfg.enabled.clear();
    for (const char* name : kSuiteNames) {
      if (const json* blk = suites.get(name)) {
        cfg.enabled.insert(name);
        parse_suite(name, Block(*blk, "/suites/" + std::string(name)), cfg, global_seed);
      }
    }
    suites.finish();
  }
  root.finish();
  return cfg;
}

namespace {

json weights_json(const std::vector<WeightPair>& ws) {
  json a = json::array();
  for (const WeightPair& w : ws) a.push_back({w.alpha(), w.beta()});
  return a;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  nlohmann::ordered_json suites = nlohmann::ordered_json::object();
  auto block = [&](const char* name) -> nlohmann::ordered_json& {
    auto& b = suites[name];
    b["enabled"] = cfg.enabled.count(name) > 0;
    return b;
  };
  {
    auto& b = block("rectangle");
    b["weights"] = weights_json(cfg.rectangle.weights);
    b["t_values"] = cfg.rectangle.t_values;
    b["tolerances"] = {{"agreement", cfg.rectangle.agreement_tol}};
  }
  {
    auto& b = block("ball");
    b["weights"] = weights_json(cfg.ball.weights);
    b["t_values"] = cfg.ball.t_values;
    b["n_poly"] = cfg.ball.n_poly;
    b["tolerances"] = {{"slope_rel", cfg.ball.slope_rel_tol}, {"bound_factor", cfg.ball.bound_factor}};
  }
  {
    auto& b = block("lemma_a");
    b["alphas"] = cfg.lemma_a.alphas;
    b["z_grid"] = cfg.lemma_a.z_grid;
    b["beta_grid"] = cfg.lemma_a.beta_grid;
    b["tolerances"] = {{"identity", cfg.lemma_a.identity_tol}};
  }
  {
    auto& b = block("stress");
    b["weights"] = weights_json(cfg.stress.weights);
    b["count"] = cfg.stress.count;
    b["seed"] = cfg.stress.seed;
    b["tolerances"] = {{"ratio", cfg.stress.ratio_tol}, {"steiner", cfg.stress.steiner_tol}};
  }
  {
    auto& b = block("oracles");
    b["weights"] = weights_json(cfg.oracles.weights);
    b["step_tol"] = cfg.oracles.step_tol;
    b["profile_intervals"] = cfg.oracles.profile_intervals;
    b["tolerances"] = {{"mu_rel", cfg.oracles.mu_rel_tol}, {"boundary", cfg.oracles.boundary_tol}};
  }
  {
    auto& b = block("dual_mu");
    b["grid_n"] = cfg.dual_mu.grid_n;
    b["alpha_max"] = cfg.dual_mu.alpha_max;
    b["tolerances"] = {{"rel", cfg.dual_mu.rel_tol}};
  }
  {
    auto& b = block("inscribed");
    b["weights"] = weights_json(cfg.inscribed.weights);
    b["n_values"] = cfg.inscribed.n_values;
    b["tolerances"] = {{"final_gap", cfg.inscribed.final_gap}};
  }
  {
    auto& b = block("half_circle");
    b["alphas"] = cfg.half_circle.alphas;
    b["samples"] = cfg.half_circle.samples;
    b["tolerances"] = {{"profile", cfg.half_circle.profile_tol},
                       {"kappa", cfg.half_circle.kappa_tol},
                       {"circle", cfg.half_circle.circle_tol}};
  }
  {
    auto& b = block("cheeger");
    b["weights"] = weights_json(cfg.cheeger.weights);
    b["count"] = cfg.cheeger.count;
    b["seed"] = cfg.cheeger.seed;
    b["tolerances"] = {{"exact", cfg.cheeger.exact_tol}};
  }
  {
    auto& b = block("spectral");
    b["resolutions"] = cfg.spectral.resolutions;
    b["rayleigh_count"] = cfg.spectral.rayleigh_count;
    b["rayleigh_resolution"] = cfg.spectral.rayleigh_resolution;
    b["seed"] = cfg.spectral.seed;
    auto eps = nlohmann::ordered_json::array();
    for (const EigenParams& ep : cfg.spectral.eigen_params) eps.push_back({ep.p, ep.gamma1, ep.gamma2});
    b["eigen_params"] = eps;
    b["tolerances"] = {{"sobolev_slack", cfg.spectral.sobolev_slack},
                       {"rayleigh_slack", cfg.spectral.rayleigh_slack}};
  }
  nlohmann::ordered_json doc;
  doc["output_dir"] = cfg.output_dir;
  doc["format"] = cfg.format;
  doc["seed"] = cfg.seed;
  doc["quadrature"] = {{"level", cfg.quadrature.level},
                       {"abs_tol", cfg.quadrature.abs_tol},
                       {"max_evals", cfg.quadrature.max_evals}};
  doc["suites"] = std::move(suites);
  return doc.dump(2) + "\n";
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

HalfPlanePolygon parse_polygon(std::string_view text) {
  std::vector<HalfPlanePolygon::Loop> loops;
  HalfPlanePolygon::Loop current;
  std::size_t loop_start = 0;
  auto close = [&](std::size_t line) {
    if (current.empty()) return;
    if (current.size() < 3)
      parse_error(loop_start, "loop starting here has " + std::to_string(current.size()) +
                                  " vertices; at least 3 are needed (ends before line " + std::to_string(line) + ")");
    loops.push_back(std::move(current));
    current.clear();
  };
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string_view line = lines[i];
    if (blank(line)) {
      close(ln);
      continue;
    }
    if (line.find_first_not_of(" \t") != std::string_view::npos && line[line.find_first_not_of(" \t")] == '#')
      continue;
    const auto vals = parse_reals(line);
    if (!vals || vals->size() != 2) parse_error(ln, "expected two finite numbers \"x y\"");
    if ((*vals)[1] < 0.0) parse_error(ln, "vertex has y < 0; polygons must lie in y >= 0");
    if (current.empty()) loop_start = ln;
    current.push_back({(*vals)[0], (*vals)[1]});
  }
  close(lines.size() + 1);
  if (loops.empty()) throw Error(ErrorCode::Parse, "polygon text contains no vertices");
  return HalfPlanePolygon::from_loops(std::move(loops));
}

std::string serialize_polygon(const HalfPlanePolygon& poly) {
  std::string out;
  bool first = true;
  for (const auto& loop : poly.loops()) {
    if (!first) out += '\n';
    first = false;
    for (const Point& p : loop) {
      out += format_real(p.x);
      out += ' ';
      out += format_real(p.y);
      out += '\n';
    }
  }
  return out;
}

GridFunction parse_grid(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && blank(lines[i])) ++i;
  if (i == lines.size()) throw Error(ErrorCode::Parse, "grid text is empty");
  const auto head = parse_reals(lines[i]);
  if (!head || head->size() != 5) parse_error(i + 1, "expected header \"nx ny spacing x0 y0\"");
  const double nxd = (*head)[0];
  const double nyd = (*head)[1];
  if (nxd < 3 || nyd < 3 || nxd != std::floor(nxd) || nyd != std::floor(nyd) || nxd * nyd > 1e9)
    parse_error(i + 1, "nx and ny must be integers >= 3");
  const auto nx = static_cast<std::size_t>(nxd);
  const auto ny = static_cast<std::size_t>(nyd);
  std::vector<double> values;
  values.reserve(nx * ny);
  for (++i; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const auto vals = parse_reals(lines[i]);
    if (!vals) parse_error(i + 1, "expected finite numbers");
    values.insert(values.end(), vals->begin(), vals->end());
  }
  if (values.size() != nx * ny)
    throw Error(ErrorCode::Parse, "grid has " + std::to_string(values.size()) + " values, header promises " +
                                      std::to_string(nx * ny));
  try {
    return GridFunction(nx, ny, (*head)[2], (*head)[3], (*head)[4], std::move(values));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string serialize_grid(const GridFunction& u) {
  std::string out = std::to_string(u.nx()) + " " + std::to_string(u.ny()) + " " + format_real(u.spacing()) + " " +
                    format_real(u.x0()) + " " + format_real(u.y0()) + "\n";
  for (std::size_t j = 0; j < u.ny(); ++j) {
    for (std::size_t i = 0; i < u.nx(); ++i) {
      if (i) out += ' ';
      out += format_real(u.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string profile_csv(const OptimalProfile& prof) {
  const WeightPair& w = prof.weights();
  std::string out = "# alpha=" + format_real(w.alpha()) + " beta=" + format_real(w.beta()) +
                    " gamma=" + format_real(w.gamma()) + "\ny,f\n";
  for (std::size_t j = 0; j < prof.ys().size(); ++j)
    out += format_real(prof.ys()[j]) + "," + format_real(prof.fs()[j]) + "\n";
  return out;
}

std::string trajectory_csv(const EulerTrajectory& traj) {
  std::string out = "# alpha=" + format_real(traj.weights.alpha()) + " beta=" + format_real(traj.weights.beta()) +
                    " lambda=" + format_real(traj.lambda) + " d=" + format_real(traj.d) +
                    " step_tol=" + format_real(traj.step_tol) + "\ns,x,y,theta,kappa\n";
  for (const EulerState& s : traj.states)
    out += format_real(s.s) + "," + format_real(s.x) + "," + format_real(s.y) + "," + format_real(s.theta) + "," +
           format_real(s.kappa) + "\n";
  return out;
}

std::string report_csv(const SweepReport& rep) {
  std::string out = "case";
  for (const auto& c : rep.columns) out += "," + csv_field(c);
  out += ",margin,pass,note\n";
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const CaseRecord& r = rep.records[i];
    out += std::to_string(i);
    for (double v : r.values) out += "," + format_real(v);
    out += "," + format_real(r.margin) + (r.pass ? ",1," : ",0,") + csv_field(r.note) + "\n";
  }
  return out;
}

std::string report_json(const SweepReport& rep) {
  json j;
  j["suite"] = rep.suite;
  j["grid"] = rep.grid;
  j["columns"] = rep.columns;
  json recs = json::array();
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const CaseRecord& r = rep.records[i];
    recs.push_back({{"case", i}, {"values", r.values}, {"margin", r.margin}, {"pass", r.pass}, {"note", r.note}});
  }
  j["records"] = std::move(recs);
  return j.dump(1) + "\n";
}

std::string summary_json(const std::vector<SweepReport>& reps) {
  json arr = json::array();
  for (const auto& r : reps)
    arr.push_back({{"suite", r.suite},
                   {"cases", r.summary.cases},
                   {"failures", r.summary.failures},
                   {"min_margin", r.summary.min_margin},
                   {"runtime_ms", r.summary.runtime_ms}});
  return arr.dump(1) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

void write_reports(const std::vector<SweepReport>& reps, const std::string& dir, const std::string& format) {
  if (format != "csv" && format != "json") throw Error(ErrorCode::Config, "format must be csv or json");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir + "': " + ec.message());
  for (const auto& r : reps) {
    const std::string path = (std::filesystem::path(dir) / (r.suite + "." + format)).string();
    write_text_file(path, format == "csv" ? report_csv(r) : report_json(r));
  }
  write_text_file((std::filesystem::path(dir) / "summary.json").string(), summary_json(reps));
}

}  // namespace wiso
