#include "sentinel/pipeline/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <set>

#include "sentinel/bazin/params.hpp"
#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel::pipeline {
namespace {

using bazin::Matrix6;
using bazin::Vector6;

[[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& msg) {
  std::string where = node.Mark().is_null() ? std::string("config") : "line " + std::to_string(node.Mark().line + 1);
  throw Error(ErrorCode::kConfigError, where + ": '" + key + "': " + msg);
}

void require_map(const YAML::Node& node, const std::string& key) {
  if (!node.IsMap()) fail(node, key, "expected a mapping");
}

// Every key of `node` must be in `allowed`.
void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(kv.first, path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, key, "cannot parse value '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& key) {
  const auto v = scalar<double>(node, key);
  if (!std::isfinite(v)) fail(node, key, "must be finite");
  return v;
}

double positive(const YAML::Node& node, const std::string& key) {
  const double v = number(node, key);
  if (!(v > 0.0)) fail(node, key, "must be > 0");
  return v;
}

std::size_t count(const YAML::Node& node, const std::string& key) {
  const auto v = scalar<long long>(node, key);
  if (v < 0) fail(node, key, "must be >= 0");
  return static_cast<std::size_t>(v);
}

template <typename F>
void optional_field(const YAML::Node& parent, const char* name, const std::string& path, F&& apply) {
  if (const auto node = parent[name]) apply(node, path.empty() ? std::string(name) : path + "." + name);
}

// Natural-space means ({amplitude, baseline, t0, tau_fall, tau_rise, sigma_int})
// become the transformed vector.
Vector6 parse_mean(const YAML::Node& node, const std::string& path) {
  check_keys(node, path, {"amplitude", "baseline", "t0", "tau_fall", "tau_rise", "sigma_int"});
  Vector6 m;
  const auto get = [&](const char* k, bool pos) {
    if (!node[k]) fail(node, path + "." + k, "missing");
    return pos ? positive(node[k], path + "." + k) : number(node[k], path + "." + k);
  };
  m[bazin::kLogAmplitude] = std::log(get("amplitude", true));
  m[bazin::kBaseline] = get("baseline", false);
  m[bazin::kT0] = get("t0", false);
  m[bazin::kLogTauFall] = std::log(get("tau_fall", true));
  m[bazin::kLogTauRise] = std::log(get("tau_rise", true));
  m[bazin::kLogSigmaInt] = std::log(get("sigma_int", true));
  return m;
}

// Standard deviations in the transformed space; absent entries are 0.
Matrix6 parse_sd(const YAML::Node& node, const std::string& path) {
  static constexpr std::array<const char*, bazin::kNumParams> kKeys{
      "log_amplitude", "baseline", "t0", "log_tau_fall", "log_tau_rise", "log_sigma_int"};
  check_keys(node, path, {kKeys[0], kKeys[1], kKeys[2], kKeys[3], kKeys[4], kKeys[5]});
  Vector6 sd = Vector6::Zero();
  for (std::size_t i = 0; i < bazin::kNumParams; ++i) {
    const char* k = kKeys[i];
    if (node[k]) {
      sd[static_cast<Eigen::Index>(i)] = number(node[k], path + "." + k);
      if (sd[static_cast<Eigen::Index>(i)] < 0.0) fail(node[k], path + "." + k, "must be >= 0");
    }
  }
  return sd.array().square().matrix().asDiagonal();
}

Matrix6 parse_cov(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence() || node.size() != bazin::kNumParams) fail(node, path, "expected a 6x6 list of rows");
  Matrix6 c;
  for (std::size_t i = 0; i < bazin::kNumParams; ++i) {
    const auto row = node[i];
    if (!row.IsSequence() || row.size() != bazin::kNumParams) fail(row, path, "expected a 6x6 list of rows");
    for (std::size_t j = 0; j < bazin::kNumParams; ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(row[j], path);
    }
  }
  return c;
}

void parse_band_params(const YAML::Node& node, const std::string& path, Vector6& mean, Matrix6& cov) {
  check_keys(node, path, {"mean", "sd", "cov"});
  if (!node["mean"]) fail(node, path + ".mean", "missing");
  mean = parse_mean(node["mean"], path + ".mean");
  if (node["sd"] && node["cov"]) fail(node["cov"], path + ".cov", "give either sd or cov, not both");
  cov = Matrix6::Zero();
  if (node["sd"]) cov = parse_sd(node["sd"], path + ".sd");
  if (node["cov"]) cov = parse_cov(node["cov"], path + ".cov");
}

synthgen::ClassTemplate parse_template(const YAML::Node& node, const std::string& path) {
  check_keys(node, path,
             {"name", "shape", "cadence_days", "noise_floor", "noise_scale", "params", "bands", "shape_params"});
  synthgen::ClassTemplate t;
  if (!node["name"]) fail(node, path + ".name", "missing");
  t.name = scalar<std::string>(node["name"], path + ".name");
  if (t.name.empty() || t.name.find_first_of(",\n/\\ ") != std::string::npos) {
    fail(node["name"], path + ".name", "class names must be non-empty without commas, slashes or spaces");
  }
  const std::string tp = path + "[" + t.name + "]";
  optional_field(node, "shape", tp, [&](const YAML::Node& n, const std::string& k) {
    try {
      t.shape = synthgen::parse_shape(scalar<std::string>(n, k));
    } catch (const Error& e) {
      fail(n, k, e.what());
    }
  });
  optional_field(node, "cadence_days", tp, [&](const auto& n, const auto& k) { t.cadence_days = positive(n, k); });
  optional_field(node, "noise_floor", tp, [&](const auto& n, const auto& k) { t.noise_floor = positive(n, k); });
  optional_field(node, "noise_scale", tp, [&](const auto& n, const auto& k) { t.noise_scale = number(n, k); });
  optional_field(node, "shape_params", tp, [&](const YAML::Node& n, const std::string& k) {
    check_keys(n, k, {"peak_separation", "second_peak_ratio", "plateau_days", "rise_days", "agn_sigma", "agn_tau"});
    auto& sp = t.shape_params;
    optional_field(n, "peak_separation", k, [&](const auto& v, const auto& kk) { sp.peak_separation = number(v, kk); });
    optional_field(n, "second_peak_ratio", k, [&](const auto& v, const auto& kk) { sp.second_peak_ratio = number(v, kk); });
    optional_field(n, "plateau_days", k, [&](const auto& v, const auto& kk) { sp.plateau_days = number(v, kk); });
    optional_field(n, "rise_days", k, [&](const auto& v, const auto& kk) { sp.rise_days = number(v, kk); });
    optional_field(n, "agn_sigma", k, [&](const auto& v, const auto& kk) { sp.agn_sigma = number(v, kk); });
    optional_field(n, "agn_tau", k, [&](const auto& v, const auto& kk) { sp.agn_tau = number(v, kk); });
  });

  const bool has_params = static_cast<bool>(node["params"]);
  const bool has_bands = static_cast<bool>(node["bands"]);
  if (has_params == has_bands) fail(node, tp, "give exactly one of 'params' (both passbands) or 'bands'");
  if (has_params) {
    parse_band_params(node["params"], tp + ".params", t.param_mean[0], t.param_cov[0]);
    t.param_mean[1] = t.param_mean[0];
    t.param_cov[1] = t.param_cov[0];
  } else {
    const auto bands = node["bands"];
    check_keys(bands, tp + ".bands", {"g", "r"});
    for (Passband b : kPassbands) {
      const std::string name(to_string(b));
      if (!bands[name]) fail(bands, tp + ".bands." + name, "missing");
      parse_band_params(bands[name], tp + ".bands." + name, t.param_mean[index_of(b)], t.param_cov[index_of(b)]);
    }
  }
  try {
    t.validate();
  } catch (const Error& e) {
    fail(node, tp, e.what());
  }
  return t;
}

void parse_generate(const YAML::Node& node, PipelineConfig& cfg) {
  check_keys(node, "generate",
             {"n_per_class", "train_fraction", "dropout_prob", "jitter_days", "window_start", "window_end", "templates"});
  auto& g = cfg.gen;
  optional_field(node, "n_per_class", "generate", [&](const auto& n, const auto& k) { g.n_per_class = count(n, k); });
  optional_field(node, "train_fraction", "generate", [&](const auto& n, const auto& k) {
    cfg.train_fraction = number(n, k);
    if (cfg.train_fraction < 0.0 || cfg.train_fraction > 1.0) fail(n, k, "must be in [0, 1]");
  });
  optional_field(node, "dropout_prob", "generate", [&](const auto& n, const auto& k) { g.dropout_prob = number(n, k); });
  optional_field(node, "jitter_days", "generate", [&](const auto& n, const auto& k) { g.jitter_days = number(n, k); });
  optional_field(node, "window_start", "generate", [&](const auto& n, const auto& k) { g.window_start = number(n, k); });
  optional_field(node, "window_end", "generate", [&](const auto& n, const auto& k) { g.window_end = number(n, k); });
  const auto templates = node["templates"];
  if (!templates || !templates.IsSequence() || templates.size() == 0) {
    fail(templates ? templates : node, "generate.templates", "expected a non-empty list");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    auto t = parse_template(templates[i], "generate.templates[" + std::to_string(i) + "]");
    if (!names.insert(t.name).second) fail(templates[i], "generate.templates", "duplicate class '" + t.name + "'");
    g.templates.push_back(std::move(t));
  }
  try {
    g.validate();
  } catch (const Error& e) {
    fail(node, "generate", e.what());
  }
}

void parse_sampler(const YAML::Node& node, PipelineConfig& cfg) {
  check_keys(node, "sampler",
             {"n_chains", "n_draws", "burn_in", "thin", "adapt_windows", "target_acceptance", "min_observations",
              "prior_draws", "seed", "map_random_starts", "map_max_evaluations"});
  auto& s = cfg.sampler;
  optional_field(node, "n_chains", "sampler", [&](const auto& n, const auto& k) { s.n_chains = count(n, k); });
  optional_field(node, "n_draws", "sampler", [&](const auto& n, const auto& k) { s.n_draws = count(n, k); });
  optional_field(node, "burn_in", "sampler", [&](const auto& n, const auto& k) { s.burn_in = count(n, k); });
  optional_field(node, "thin", "sampler", [&](const auto& n, const auto& k) { s.thin = count(n, k); });
  optional_field(node, "adapt_windows", "sampler", [&](const auto& n, const auto& k) { s.adapt_windows = count(n, k); });
  optional_field(node, "target_acceptance", "sampler", [&](const auto& n, const auto& k) { s.target_acceptance = number(n, k); });
  optional_field(node, "min_observations", "sampler", [&](const auto& n, const auto& k) { s.min_observations = count(n, k); });
  optional_field(node, "prior_draws", "sampler", [&](const auto& n, const auto& k) { cfg.prior_draws = count(n, k); });
  optional_field(node, "seed", "sampler", [&](const auto& n, const auto& k) { cfg.sampler_seed = scalar<std::uint64_t>(n, k); });
  optional_field(node, "map_random_starts", "sampler", [&](const auto& n, const auto& k) { s.map.n_random_starts = count(n, k); });
  optional_field(node, "map_max_evaluations", "sampler",
                 [&](const auto& n, const auto& k) { s.map.max_evaluations = count(n, k); });
  if (s.n_chains < 2) fail(node, "sampler.n_chains", "need at least 2 chains");
  if (s.n_draws < s.n_chains) fail(node, "sampler.n_draws", "need at least one draw per chain");
  if (s.thin < 1) fail(node, "sampler.thin", "must be >= 1");
  if (cfg.prior_draws < 1) fail(node, "sampler.prior_draws", "must be >= 1");
  if (!(s.target_acceptance > 0.0 && s.target_acceptance < 1.0)) {
    fail(node, "sampler.target_acceptance", "must be in (0, 1)");
  }
}

void parse_priors(const YAML::Node& node, PipelineConfig& cfg) {
  check_keys(node, "priors", {"min_curves", "max_failure_rate", "cov_regularization", "map_random_starts"});
  auto& p = cfg.priors;
  optional_field(node, "min_curves", "priors", [&](const auto& n, const auto& k) { p.min_curves = count(n, k); });
  optional_field(node, "max_failure_rate", "priors", [&](const auto& n, const auto& k) { p.max_failure_rate = number(n, k); });
  optional_field(node, "cov_regularization", "priors", [&](const auto& n, const auto& k) { p.cov_regularization = number(n, k); });
  optional_field(node, "map_random_starts", "priors", [&](const auto& n, const auto& k) { p.fit.n_random_starts = count(n, k); });
}

std::vector<double> parse_grid(const YAML::Node& node, const std::string& path) {
  std::vector<double> grid;
  if (node.IsSequence()) {
    for (const auto& v : node) grid.push_back(number(v, path));
  } else {
    check_keys(node, path, {"start", "stop", "step"});
    for (const char* k : {"start", "stop", "step"}) {
      if (!node[k]) fail(node, path + "." + k, "missing");
    }
    const double start = number(node["start"], path + ".start");
    const double stop = number(node["stop"], path + ".stop");
    const double step = positive(node["step"], path + ".step");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
  }
  if (grid.empty()) fail(node, path, "empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) fail(node, path, "grid must be ascending");
  return grid;
}

void parse_evaluate(const YAML::Node& node, PipelineConfig& cfg) {
  check_keys(node, "evaluate", {"grid", "muspe_slices", "max_bins"});
  auto& e = cfg.evaluate;
  optional_field(node, "grid", "evaluate", [&](const auto& n, const auto& k) { e.grid = parse_grid(n, k); });
  optional_field(node, "max_bins", "evaluate", [&](const auto& n, const auto& k) {
    e.max_bins = count(n, k);
    if (e.max_bins < 1) fail(n, k, "must be >= 1");
  });
  optional_field(node, "muspe_slices", "evaluate", [&](const YAML::Node& n, const std::string& k) {
    if (!n.IsSequence()) fail(n, k, "expected a list of [lo, hi] pairs");
    e.muspe_slices.clear();
    for (const auto& s : n) {
      if (!s.IsSequence() || s.size() != 2) fail(s, k, "expected a [lo, hi] pair");
      eval::TimeSlice slice{number(s[0], k), number(s[1], k)};
      if (!(slice.hi > slice.lo)) fail(s, k, "slice needs hi > lo");
      e.muspe_slices.push_back(slice);
    }
    auto sorted = e.muspe_slices;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].lo < sorted[i - 1].hi) fail(n, k, "slices " + sorted[i - 1].label() + " and " + sorted[i].label() + " overlap");
    }
  });
}

}  // namespace

PipelineConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigError, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw Error(ErrorCode::kConfigError, "config: top level must be a mapping");
  // `tcn` belongs to the external forecaster; it is accepted and ignored here.
  check_keys(root, "",
             {"seed", "output_dir", "generate", "trained_classes", "sampler", "scoring", "priors", "evaluate",
              "external", "tcn"});

  PipelineConfig cfg;
  cfg.evaluate.grid = {-30, -20, -10, 0, 10, 20, 30, 40, 50, 60, 70, 80};
  cfg.evaluate.muspe_slices = {{-70, 0}, {0, 20}, {20, 50}, {50, 80.5}};

  optional_field(root, "seed", "", [&](const auto& n, const auto& k) { cfg.seed = scalar<std::uint64_t>(n, k); });
  if (!root["output_dir"]) fail(root, "output_dir", "missing");
  cfg.output_dir = base_dir / scalar<std::string>(root["output_dir"], "output_dir");
  if (!root["generate"]) fail(root, "generate", "missing");
  parse_generate(root["generate"], cfg);

  if (const auto tc = root["trained_classes"]) {
    if (!tc.IsSequence() || tc.size() == 0) fail(tc, "trained_classes", "expected a non-empty list");
    for (const auto& c : tc) {
      auto name = scalar<std::string>(c, "trained_classes");
      const bool known = std::any_of(cfg.gen.templates.begin(), cfg.gen.templates.end(),
                                     [&](const auto& t) { return t.name == name; });
      if (!known) fail(c, "trained_classes", "class '" + name + "' is not a generate template");
      if (std::find(cfg.trained_classes.begin(), cfg.trained_classes.end(), name) != cfg.trained_classes.end()) {
        fail(c, "trained_classes", "duplicate class '" + name + "'");
      }
      cfg.trained_classes.push_back(std::move(name));
    }
  } else {
    fail(root, "trained_classes", "missing");
  }

  if (const auto n = root["sampler"]) parse_sampler(n, cfg);
  if (const auto n = root["priors"]) parse_priors(n, cfg);
  if (const auto n = root["evaluate"]) parse_evaluate(n, cfg);
  if (const auto n = root["scoring"]) {
    check_keys(n, "scoring", {"horizon", "match_window"});
    optional_field(n, "horizon", "scoring", [&](const auto& v, const auto& k) { cfg.scoring.horizon = positive(v, k); });
    optional_field(n, "match_window", "scoring", [&](const auto& v, const auto& k) { cfg.scoring.match_window = positive(v, k); });
  }
  if (const auto n = root["external"]) {
    check_keys(n, "external", {"predictions"});
    const auto preds = n["predictions"];
    if (!preds) fail(n, "external.predictions", "missing");
    require_map(preds, "external.predictions");
    for (const auto& kv : preds) {
      const auto name = kv.first.as<std::string>();
      cfg.external_predictions[name] = base_dir / scalar<std::string>(kv.second, "external.predictions." + name);
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = text::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return parse_config(text, path.parent_path());
}

}  // namespace sentinel::pipeline
