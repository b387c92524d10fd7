#include "sentinel/pipeline/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "sentinel/anomaly_io.hpp"
#include "sentinel/bazin/population.hpp"
#include "sentinel/bazin/predict.hpp"
#include "sentinel/error.hpp"
#include "sentinel/lightcurve_io.hpp"
#include "sentinel/pipeline/worker_pool.hpp"
#include "sentinel/rng.hpp"
#include "sentinel/synthgen.hpp"
#include "sentinel/text_io.hpp"
#include "sentinel/toy_predictors.hpp"

namespace sentinel::pipeline {
namespace fs = std::filesystem;

namespace {

fs::path train_path(const PipelineConfig& cfg) { return cfg.output_dir / "train.csv"; }
fs::path test_path(const PipelineConfig& cfg) { return cfg.output_dir / "test.csv"; }

Dataset load_input(const fs::path& path, std::ostream& log) {
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "missing input " + path.string());
  std::vector<std::string> warnings;
  Dataset d = load_dataset(path, DatasetFormat::kCsv, &warnings);
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  return d;
}

void check_model(const std::string& model) {
  if (model != "bazin" && model != "external") {
    throw Error(ErrorCode::kConfigError, "--model must be 'bazin' or 'external', got '" + model + "'");
  }
}

}  // namespace

fs::path prior_path(const PipelineConfig& cfg, const std::string& class_name) {
  return cfg.output_dir / ("prior_" + class_name + ".json");
}
fs::path scores_path(const PipelineConfig& cfg, const std::string& model) {
  return cfg.output_dir / ("scores_" + model + ".csv");
}
fs::path failures_path(const PipelineConfig& cfg, const std::string& model) {
  return cfg.output_dir / ("score_failures_" + model + ".csv");
}

Split split_dataset(const Dataset& data, double train_fraction, std::uint64_t seed) {
  std::vector<bool> in_train(data.n_transients(), false);
  const auto& curves = data.light_curves();
  for (const auto& label : data.class_labels()) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (curves[i].class_label() == label) members.push_back(i);
    }
    // Raw engine output is portable; library distributions and std::shuffle are not.
    Rng rng = make_stream(seed, "split", fnv1a(label));
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    for (std::size_t m : members) keyed.emplace_back(rng(), m);
    std::sort(keyed.begin(), keyed.end());
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t k = 0; k < n_train && k < keyed.size(); ++k) in_train[keyed[k].second] = true;
  }
  std::vector<LightCurve> train;
  std::vector<LightCurve> test;
  for (std::size_t i = 0; i < curves.size(); ++i) (in_train[i] ? train : test).push_back(curves[i]);
  return Split{Dataset(std::move(train)), Dataset(std::move(test))};
}

int cmd_generate(const PipelineConfig& cfg, std::ostream& log) {
  synthgen::GenSpec spec = cfg.gen;
  spec.seed = cfg.seed;
  const Dataset all = synthgen::generate_population(spec);
  const Split split = split_dataset(all, cfg.train_fraction, cfg.seed);
  fs::create_directories(cfg.output_dir);
  save_dataset(split.train, train_path(cfg), DatasetFormat::kCsv);
  save_dataset(split.test, test_path(cfg), DatasetFormat::kCsv);
  log << "generated " << all.n_transients() << " curves: " << split.train.n_transients() << " train, "
      << split.test.n_transients() << " test\n";
  return kExitOk;
}

int cmd_fit_priors(const PipelineConfig& cfg, std::size_t jobs, std::ostream& log) {
  const Dataset train = load_input(train_path(cfg), log);
  const std::size_t n = cfg.trained_classes.size();
  std::vector<std::optional<bazin::ClassPrior>> priors(n);
  std::vector<bazin::PriorBuildReport> reports(n);
  std::vector<std::string> errors(n);
  std::vector<ErrorCode> codes(n, ErrorCode::kInvalidPrior);

  parallel_for(n, jobs, [&](std::size_t i) {
    bazin::PriorBuildOptions opts = cfg.priors;
    opts.fit.seed = cfg.seed;
    try {
      priors[i] = bazin::build_class_prior(train, cfg.trained_classes[i], opts, &reports[i]);
    } catch (const Error& e) {
      errors[i] = e.what();
      codes[i] = e.code();
    }
  });

  int status = kExitOk;
  fs::create_directories(cfg.output_dir);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = cfg.trained_classes[i];
    log << "class " << name << ": " << reports[i].n_failures << "/" << reports[i].n_fits
        << " fit failures (rate " << text::format_double(reports[i].failure_rate()) << ")\n";
    if (priors[i]) {
      bazin::save_prior(*priors[i], prior_path(cfg, name));
      continue;
    }
    log << "error: " << errors[i] << '\n';
    if (codes[i] == ErrorCode::kFitFailureRateExceeded) {
      status = kExitFitFailure;
    } else if (status == kExitOk) {
      status = kExitConfig;
    }
  }
  return status;
}

std::vector<anomaly::AnomalyScoreSeries> score_all(const Dataset& data, const std::vector<const Predictor*>& models,
                                                   const anomaly::ScoringOptions& options, std::size_t jobs) {
  const auto& curves = data.light_curves();
  std::vector<anomaly::AnomalyScoreSeries> out(models.size() * curves.size());
  parallel_for(out.size(), jobs, [&](std::size_t k) {
    const Predictor& model = *models[k / curves.size()];
    const LightCurve& lc = curves[k % curves.size()];
    try {
      out[k] = anomaly::score_lightcurve(lc, model, options);
    } catch (const std::exception& e) {
      anomaly::AnomalyScoreSeries s;
      s.transient_id = lc.transient_id();
      s.class_label = lc.class_label();
      s.model_class = model.model_class();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      s.failures.push_back(anomaly::StepFailure{nan, nan, Passband::g, e.what()});
      out[k] = std::move(s);
    }
  });
  return out;
}

int cmd_score(const PipelineConfig& cfg, const std::string& model, std::size_t jobs, std::ostream& log) {
  check_model(model);
  const Dataset test = load_input(test_path(cfg), log);

  std::vector<std::unique_ptr<Predictor>> owned;
  if (model == "bazin") {
    for (const auto& name : cfg.trained_classes) {
      const auto path = prior_path(cfg, name);
      if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "missing prior " + path.string() + " (run fit-priors)");
      bazin::BazinPredictorOptions opts;
      opts.sampler = cfg.sampler;
      opts.prior_draws = cfg.prior_draws;
      opts.seed = cfg.predictor_seed();
      owned.push_back(std::make_unique<bazin::BazinPredictor>(bazin::load_prior(path), opts));
    }
  } else {
    if (cfg.external_predictions.empty()) {
      throw Error(ErrorCode::kConfigError, "'external.predictions' is required for --model external");
    }
    for (const auto& [name, path] : cfg.external_predictions) {
      if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "missing prediction file " + path.string());
      owned.push_back(
          std::make_unique<anomaly::ExternalPredictor>(name, anomaly::read_predictions(path), cfg.scoring.match_window));
    }
  }
  std::vector<const Predictor*> models;
  for (const auto& m : owned) models.push_back(m.get());

  const auto series = score_all(test, models, cfg.scoring, jobs);
  fs::create_directories(cfg.output_dir);
  anomaly::write_scores(series, scores_path(cfg, model));
  text::write_file_atomic(failures_path(cfg, model), anomaly::failures_to_csv(series));

  const auto failed = static_cast<std::size_t>(
      std::count_if(series.begin(), series.end(), [](const auto& s) { return !s.failures.empty(); }));
  const double rate = series.empty() ? 0.0 : static_cast<double>(failed) / static_cast<double>(series.size());
  log << "scored " << series.size() << " series (" << models.size() << " models x " << test.n_transients()
      << " curves); " << failed << " with failures\n";
  if (rate > kMaxCurveFailureRate) {
    log << "error: per-curve failure rate " << text::format_double(rate) << " exceeds "
        << text::format_double(kMaxCurveFailureRate) << "; see " << failures_path(cfg, model).string() << '\n';
    return kExitScoreFailure;
  }
  return kExitOk;
}

EvaluationResult evaluate_scores(const std::vector<anomaly::AnomalyScoreSeries>& series,
                                 const std::vector<std::string>& normal_classes, const EvaluateSettings& settings) {
  EvaluationResult r;
  r.normal_classes = normal_classes;
  const std::set<std::string> normal(normal_classes.begin(), normal_classes.end());

  std::vector<std::string> models;
  std::set<std::string> labels;
  std::vector<std::string> transient_order;
  std::map<std::string, std::vector<eval::ScoreTrack>> tracks;
  std::map<std::string, std::string> label_of;
  for (const auto& s : series) {
    if (std::find(models.begin(), models.end(), s.model_class) == models.end()) models.push_back(s.model_class);
    labels.insert(s.class_label);
    if (s.empty()) continue;
    auto [it, inserted] = tracks.try_emplace(s.transient_id);
    if (inserted) transient_order.push_back(s.transient_id);
    it->second.push_back(eval::track_of(s));
    label_of[s.transient_id] = s.class_label;
  }
  for (const auto& l : labels) {
    if (!normal.count(l)) r.anomaly_classes.push_back(l);
  }

  std::vector<eval::ScoreTrack> pooled_normal;
  std::map<std::string, std::vector<eval::ScoreTrack>> pooled_anomalous;
  std::map<std::string, std::vector<double>> pooled_finals;
  for (const auto& id : transient_order) {
    auto pooled = eval::pool_min(tracks[id]);
    pooled_finals[label_of[id]].push_back(pooled.final_score());
    if (normal.count(label_of[id])) {
      pooled_normal.push_back(std::move(pooled));
    } else {
      pooled_anomalous[label_of[id]].push_back(std::move(pooled));
    }
  }

  std::vector<double> normal_finals;
  for (const auto& t : pooled_normal) normal_finals.push_back(t.final_score());
  for (const auto& cls : r.anomaly_classes) {
    const auto& anom = pooled_anomalous[cls];
    if (normal_finals.empty() || anom.empty()) continue;
    std::vector<double> finals;
    for (const auto& t : anom) finals.push_back(t.final_score());
    r.rocs.push_back(eval::NamedRoc{cls, eval::roc_curve(normal_finals, finals), normal_finals.size(), finals.size()});
    r.auc_time.push_back(eval::auc_over_time(pooled_normal, anom, settings.grid, cls));
  }

  for (const auto& m : models) {
    for (const auto& l : labels) {
      std::vector<anomaly::AnomalyScoreSeries> subset;
      for (const auto& s : series) {
        if (s.model_class == m && s.class_label == l && !s.empty()) subset.push_back(s);
      }
      if (subset.empty()) continue;
      const std::string prefix = m + "/" + l;
      r.score_hists.push_back(eval::score_distribution(subset, prefix, settings.max_bins));
      for (auto& h : eval::muspe_histograms(subset, settings.muspe_slices, settings.max_bins)) {
        h.label = prefix + "/" + h.label;
        r.muspe_hists.push_back(std::move(h));
      }
    }
  }
  for (const auto& [label, finals] : pooled_finals) {
    r.score_hists.push_back(eval::histogram(finals, "pooled/" + label, "all", settings.max_bins));
  }
  return r;
}

void write_evaluation(const EvaluationResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  text::write_file_atomic(dir / "roc.csv", eval::roc_to_csv(result.rocs));
  text::write_file_atomic(dir / "summary.csv", eval::summary_to_csv(result.rocs));
  text::write_file_atomic(dir / "auc_vs_time.csv", eval::auc_time_to_csv(result.auc_time));
  text::write_file_atomic(dir / "score_hist.csv", eval::histograms_to_csv(result.score_hists));
  text::write_file_atomic(dir / "score_hist_summary.csv", eval::histogram_summary_to_csv(result.score_hists));
  text::write_file_atomic(dir / "muspe_hist.csv", eval::histograms_to_csv(result.muspe_hists));
  text::write_file_atomic(dir / "muspe_hist_summary.csv", eval::histogram_summary_to_csv(result.muspe_hists));
}

int cmd_evaluate(const PipelineConfig& cfg, const std::string& model, std::ostream& log) {
  check_model(model);
  const Dataset test = load_input(test_path(cfg), log);
  const auto path = scores_path(cfg, model);
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "missing scores " + path.string() + " (run score)");
  auto series = anomaly::read_scores(path);

  std::vector<std::string> model_classes;
  for (auto& s : series) {
    const LightCurve* lc = test.find(s.transient_id);
    if (lc == nullptr) throw Error(ErrorCode::kParseError, "scored transient '" + s.transient_id + "' not in test set");
    s.class_label = lc->class_label();
    if (std::find(model_classes.begin(), model_classes.end(), s.model_class) == model_classes.end()) {
      model_classes.push_back(s.model_class);
    }
  }
  if (series.empty()) throw Error(ErrorCode::kEmptyInput, path.string() + " holds no scores");

  EvaluateSettings settings = cfg.evaluate;
  const auto result = evaluate_scores(series, model_classes, settings);
  write_evaluation(result, cfg.output_dir);
  if (result.anomaly_classes.empty()) {
    log << "no anomaly classes: every scored class has its own model; ROC outputs are empty\n";
    return kExitOk;
  }
  log << "anomaly_class,auc\n";
  for (const auto& roc : result.rocs) log << roc.anomaly_class << ',' << text::format_double(roc.roc.auc) << '\n';
  return kExitOk;
}

int run_command(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    PipelineConfig cfg = load_config(options.config);
    if (options.seed) cfg.seed = *options.seed;
    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (command == "generate") return cmd_generate(cfg, out);
    if (command == "fit-priors") return cmd_fit_priors(cfg, jobs, out);
    if (command == "score") return cmd_score(cfg, options.model, jobs, out);
    if (command == "evaluate") return cmd_evaluate(cfg, options.model, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kConfigError:
      case ErrorCode::kIoError:
      case ErrorCode::kMissingColumn:
      case ErrorCode::kParseError:
      case ErrorCode::kEmptyInput:
      case ErrorCode::kInvalidTemplate:
      case ErrorCode::kInvalidPrior:
        return kExitConfig;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sentinel::pipeline
