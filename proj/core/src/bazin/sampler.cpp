#include "sentinel/bazin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>

#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel::bazin {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const double kLogSigmaFloor = std::log(kSigmaIntFloor);

MatrixXd robust_cholesky(MatrixXd cov) {
  const auto k = cov.rows();
  cov = 0.5 * (cov + cov.transpose()).eval();
  double jitter = 1e-12 * std::max(cov.diagonal().cwiseAbs().maxCoeff(), 1e-12);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Eigen::LLT<MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    cov.diagonal().array() += jitter;
    jitter *= 10.0;
  }
  return MatrixXd::Identity(k, k) * 1e-6;
}

// Inverse negative Hessian at `x` over the free coordinates; falls back to a
// shrunken prior diagonal where the finite differences are unusable.
MatrixXd laplace_covariance(const LogPosterior& lp, const Vector6& x, const std::vector<Eigen::Index>& free,
                            const GaussianPrior& prior) {
  const auto k = static_cast<Eigen::Index>(free.size());
  const double f0 = lp(x);
  VectorXd h(k);
  for (Eigen::Index a = 0; a < k; ++a) h[a] = 1e-3 * std::max(1.0, std::abs(x[free[a]]));

  const auto shifted = [&](Eigen::Index a, double sa, Eigen::Index b, double sb) {
    Vector6 y = x;
    y[free[a]] += sa * h[a];
    if (b >= 0) y[free[b]] += sb * h[b];
    return lp(y);
  };

  MatrixXd hess(k, k);
  bool usable = std::isfinite(f0);
  for (Eigen::Index a = 0; a < k && usable; ++a) {
    const double fp = shifted(a, 1, -1, 0);
    const double fm = shifted(a, -1, -1, 0);
    hess(a, a) = (fp - 2.0 * f0 + fm) / (h[a] * h[a]);
    usable = std::isfinite(hess(a, a));
    for (Eigen::Index b = 0; b < a && usable; ++b) {
      const double v = (shifted(a, 1, b, 1) - shifted(a, 1, b, -1) - shifted(a, -1, b, 1) + shifted(a, -1, b, -1)) /
                       (4.0 * h[a] * h[b]);
      hess(a, b) = hess(b, a) = v;
      usable = std::isfinite(v);
    }
  }
  if (usable) {
    const MatrixXd neg = -hess;
    Eigen::LLT<MatrixXd> llt(neg);
    if (llt.info() == Eigen::Success) {
      MatrixXd cov = llt.solve(MatrixXd::Identity(k, k));
      if (cov.allFinite()) return cov;
    }
  }
  MatrixXd cov = MatrixXd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) cov(a, a) = 0.01 * prior.cov()(free[a], free[a]);
  return cov;
}

Vector6 starting_point(const BandSeries& data, const GaussianPrior& prior, const SamplerConfig& cfg,
                       const LogPosterior& lp, Rng& rng) {
  if (cfg.init) {
    if (!std::isfinite(lp(*cfg.init))) throw Error(ErrorCode::kInvalidParams, "sampler init outside the support");
    return *cfg.init;
  }
  const bool all_free = std::all_of(cfg.free.begin(), cfg.free.end(), [](bool f) { return f; });
  if (all_free && data.size() >= std::max<std::size_t>(3, cfg.map.min_observations)) {
    FitOptions map = cfg.map;
    map.seed = rng();
    return fit_map(data, prior, map).transformed;
  }
  Vector6 x = prior.mean();
  x[kLogSigmaInt] = std::max(x[kLogSigmaInt], kLogSigmaFloor + 0.5);
  return x;
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
  if (chains.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = chains.front().size() / 2;
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<double, double>> stats;  // mean, variance
  for (const auto& c : chains) {
    for (std::size_t half = 0; half < 2; ++half) {
      const std::size_t begin = half == 0 ? 0 : c.size() - n;
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += c[begin + i];
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (std::size_t i = 0; i < n; ++i) var += (c[begin + i] - mean) * (c[begin + i] - mean);
      stats.emplace_back(mean, var / static_cast<double>(n - 1));
    }
  }
  const double m = static_cast<double>(stats.size());
  double w = 0.0;
  double grand = 0.0;
  for (const auto& [mean, var] : stats) {
    w += var;
    grand += mean;
  }
  w /= m;
  grand /= m;
  double b = 0.0;  // B / n
  for (const auto& [mean, var] : stats) b += (mean - grand) * (mean - grand);
  b /= (m - 1.0);
  if (w <= 0.0) return b <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  const double var_plus = (nn - 1.0) / nn * w + b;
  return std::sqrt(var_plus / w);
}

double effective_sample_size(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  if (m == 0) return 0.0;
  const std::size_t n = chains.front().size();
  const double total = static_cast<double>(m * n);
  if (n < 4) return total;

  std::vector<double> means(m);
  for (std::size_t c = 0; c < m; ++c) {
    means[c] = std::accumulate(chains[c].begin(), chains[c].end(), 0.0) / static_cast<double>(n);
  }
  const auto acov = [&](std::size_t c, std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += (chains[c][i] - means[c]) * (chains[c][i + lag] - means[c]);
    return s / static_cast<double>(n);
  };
  const double nn = static_cast<double>(n);
  double mean_var = 0.0;
  for (std::size_t c = 0; c < m; ++c) mean_var += acov(c, 0) * nn / (nn - 1.0);
  mean_var /= static_cast<double>(m);
  double var_plus = mean_var * (nn - 1.0) / nn;
  if (m > 1) {
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(m);
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    var_plus += b / static_cast<double>(m - 1);
  }
  if (!(var_plus > 0.0)) return total;

  const auto rho = [&](std::size_t lag) {
    double mean_acov = 0.0;
    for (std::size_t c = 0; c < m; ++c) mean_acov += acov(c, lag);
    mean_acov /= static_cast<double>(m);
    return 1.0 - (mean_var - mean_acov) / var_plus;
  };

  double tau = -1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t lag = 0; lag + 1 < n; lag += 2) {
    double pair = rho(lag) + rho(lag + 1);
    if (pair < 0.0) break;
    pair = std::min(pair, prev_pair);
    tau += 2.0 * pair;
    prev_pair = pair;
  }
  tau = std::max(tau, 1.0 / std::log10(total));
  return total / tau;
}

PosteriorSamples sample_posterior(const BandSeries& data, const GaussianPrior& prior, const SamplerConfig& cfg,
                                  Rng& rng) {
  if (cfg.n_chains == 0 || cfg.thin == 0 || cfg.n_draws < cfg.n_chains) {
    throw Error(ErrorCode::kInvalidParams, "sampler needs n_chains >= 1, thin >= 1, n_draws >= n_chains");
  }
  if (data.size() < cfg.min_observations) {
    throw Error(ErrorCode::kInsufficientData, "need at least " + std::to_string(cfg.min_observations) +
                                                  " observations in passband " + std::string(to_string(data.band)) +
                                                  ", have " + std::to_string(data.size()));
  }

  const LogPosterior lp(data, prior);
  std::vector<Eigen::Index> free;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    if (cfg.free[i]) free.push_back(static_cast<Eigen::Index>(i));
  }
  const auto k = static_cast<Eigen::Index>(free.size());
  const Vector6 start = starting_point(data, prior, cfg, lp, rng);

  const std::size_t n_chains = cfg.n_chains;
  const std::size_t per_chain = (cfg.n_draws + n_chains - 1) / n_chains;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;

  MatrixXd cov = k > 0 ? laplace_covariance(lp, start, free, prior) : MatrixXd();
  double log_scale = k > 0 ? std::log(2.38 * 2.38 / static_cast<double>(k)) : 0.0;
  MatrixXd chol = k > 0 ? robust_cholesky(cov) : MatrixXd();

  const auto propose = [&](const Vector6& x, const MatrixXd& l, double scale) {
    VectorXd z(k);
    for (Eigen::Index a = 0; a < k; ++a) z[a] = normal(rng);
    const VectorXd step = scale * (l * z);
    Vector6 y = x;
    for (Eigen::Index a = 0; a < k; ++a) y[free[a]] += step[a];
    return y;
  };

  std::vector<Vector6> state(n_chains, start);
  std::vector<double> state_lp(n_chains, lp(start));
  if (k > 0) {
    for (std::size_t c = 0; c < n_chains; ++c) {
      double jitter = cfg.init_jitter;
      for (int attempt = 0; attempt < 60; ++attempt, jitter *= 0.5) {
        const Vector6 y = propose(start, chol, jitter);
        const double v = lp(y);
        if (std::isfinite(v)) {
          state[c] = y;
          state_lp[c] = v;
          break;
        }
      }
    }
  }

  // Burn-in with adaptation.
  const std::size_t windows = std::max<std::size_t>(1, cfg.adapt_windows);
  const std::size_t window_len = std::max<std::size_t>(1, cfg.burn_in / windows);
  std::vector<VectorXd> window;
  window.reserve(window_len * n_chains);
  for (std::size_t iter = 0; iter < cfg.burn_in && k > 0; ++iter) {
    const double gain = 1.0 / std::pow(static_cast<double>(iter) + 1.0, 0.6);
    const double scale = std::exp(0.5 * log_scale);
    for (std::size_t c = 0; c < n_chains; ++c) {
      const Vector6 y = propose(state[c], chol, scale);
      const double v = lp(y);
      const double alpha = std::isfinite(v) ? std::exp(std::min(0.0, v - state_lp[c])) : 0.0;
      if (uniform(rng) < alpha) {
        state[c] = y;
        state_lp[c] = v;
      }
      log_scale += gain * (alpha - cfg.target_acceptance) / static_cast<double>(n_chains);
      VectorXd f(k);
      for (Eigen::Index a = 0; a < k; ++a) f[a] = state[c][free[a]];
      window.push_back(std::move(f));
    }
    if ((iter + 1) % window_len == 0) {
      const auto n = static_cast<double>(window.size());
      if (window.size() > static_cast<std::size_t>(2 * k)) {
        VectorXd mean = VectorXd::Zero(k);
        for (const auto& f : window) mean += f;
        mean /= n;
        MatrixXd emp = MatrixXd::Zero(k, k);
        for (const auto& f : window) emp += (f - mean) * (f - mean).transpose();
        emp /= (n - 1.0);
        // Ignore a window that barely moved; keep the previous estimate.
        if (emp.diagonal().minCoeff() > 0.0 && emp.allFinite()) {
          cov = emp + 1e-10 * MatrixXd::Identity(k, k) * emp.diagonal().mean();
          chol = robust_cholesky(cov);
          log_scale = std::log(2.38 * 2.38 / static_cast<double>(k));
        }
      }
      window.clear();
    }
  }

  // Sampling with the proposal frozen.
  const double scale = std::exp(0.5 * log_scale);
  PosteriorSamples out;
  out.band = data.band;
  out.draws.reserve(per_chain * n_chains);
  std::vector<std::vector<Vector6>> kept(n_chains);
  std::vector<std::vector<double>> kept_lp(n_chains);
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  for (std::size_t c = 0; c < n_chains; ++c) {
    kept[c].reserve(per_chain);
    kept_lp[c].reserve(per_chain);
  }
  for (std::size_t d = 0; d < per_chain; ++d) {
    for (std::size_t c = 0; c < n_chains; ++c) {
      for (std::size_t t = 0; t < cfg.thin && k > 0; ++t) {
        const Vector6 y = propose(state[c], chol, scale);
        const double v = lp(y);
        ++proposed;
        if (std::isfinite(v) && uniform(rng) < std::exp(std::min(0.0, v - state_lp[c]))) {
          state[c] = y;
          state_lp[c] = v;
          ++accepted;
        }
      }
      kept[c].push_back(state[c]);
      kept_lp[c].push_back(state_lp[c]);
    }
  }

  for (std::size_t c = 0; c < n_chains; ++c) {
    for (std::size_t d = 0; d < per_chain; ++d) {
      out.transformed.push_back(kept[c][d]);
      out.draws.push_back(to_natural(kept[c][d]));
      out.log_posterior.push_back(kept_lp[c][d]);
      out.chain.push_back(c);
    }
  }

  auto& diag = out.diagnostics;
  diag.n_chains = n_chains;
  diag.draws_per_chain = per_chain;
  diag.acceptance_rate = proposed == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  diag.converged = true;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    diag.rhat[i] = 1.0;
    diag.ess[i] = static_cast<double>(per_chain * n_chains);
    if (!cfg.free[i]) continue;
    std::vector<std::vector<double>> series(n_chains, std::vector<double>(per_chain));
    for (std::size_t c = 0; c < n_chains; ++c) {
      for (std::size_t d = 0; d < per_chain; ++d) series[c][d] = kept[c][d][static_cast<Eigen::Index>(i)];
    }
    if (n_chains * (per_chain / 2) >= 2 && per_chain >= 4) diag.rhat[i] = split_rhat(series);
    if (cfg.compute_ess) diag.ess[i] = effective_sample_size(series);
    if (!(diag.rhat[i] <= 1.1)) diag.converged = false;
  }
  return out;
}

PosteriorSamples sample_posterior(const PartialLightCurve& plc, const ClassPrior& prior, Passband band,
                                  const SamplerConfig& cfg, Rng& rng) {
  return sample_posterior(BandSeries::from(plc, band), prior.band(band), cfg, rng);
}

PosteriorSamples sample_prior(const GaussianPrior& prior, Passband band, std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::kEmptySamples, "requested zero prior draws");
  PosteriorSamples out;
  out.band = band;
  std::size_t rejections = 0;
  while (out.draws.size() < n) {
    const Vector6 x = prior.draw(rng);
    if (x[kLogSigmaInt] < kLogSigmaFloor) {
      if (++rejections > 1000 * n) throw Error(ErrorCode::kRejectionBudgetExceeded, "prior mass below sigma_int floor");
      continue;
    }
    out.transformed.push_back(x);
    out.draws.push_back(to_natural(x));
    out.log_posterior.push_back(prior.log_density(x));
    out.chain.push_back(0);
  }
  out.diagnostics.acceptance_rate = 1.0;
  out.diagnostics.rhat.fill(1.0);
  out.diagnostics.ess.fill(static_cast<double>(n));
  out.diagnostics.n_chains = 1;
  out.diagnostics.draws_per_chain = n;
  return out;
}

std::string samples_to_csv(const PosteriorSamples& samples) {
  std::string out = "chain,A,B,t0,tau_fall,tau_rise,sigma_int,log_posterior\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples.draws[i];
    out += std::to_string(samples.chain[i]);
    for (std::size_t j = 0; j < kNumParams; ++j) {
      out += ',';
      out += text::format_double(p[j]);
    }
    out += ',';
    out += text::format_double(samples.log_posterior[i]);
    out += '\n';
  }
  return out;
}

}  // namespace sentinel::bazin
