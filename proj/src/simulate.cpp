#include "qres/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "qres/errors.hpp"
#include "qres/metrology.hpp"
#include "qres/numerics.hpp"

namespace qres {
namespace {

constexpr double kMleRelTol = 1e-10;

void validate_config(const TrialConfig& config) {
  validate_alpha(config.alpha);
  if (!(config.energy > 0.0) || !std::isfinite(config.energy)) {
    throw DomainError("mean energy must be positive and finite");
  }
  if (config.n < 1) throw DomainError("repetitions N must be >= 1");
  if (!std::isfinite(config.chi)) throw DomainError("chi must be finite");
  if (config.with_posterior && (config.grid_points < 101 || config.grid_points % 2 == 0)) {
    throw DomainError("grid_points must be odd and >= 101");
  }
}

TrialSummary summarize(const TrialConfig& config, std::vector<TrialResult> results) {
  TrialSummary s;
  s.config = config;
  s.gamma = gamma_for_energy(config.alpha, config.energy);
  s.per_trial = std::move(results);
  const double count = static_cast<double>(s.per_trial.size());

  double sum_mle = 0.0;
  double sum_post = 0.0;
  double sum_kurt = 0.0;
  for (const auto& r : s.per_trial) {
    sum_mle += r.mle;
    sum_post += r.posterior_variance;
    sum_kurt += r.excess_kurtosis;
  }
  s.mle_mean = sum_mle / count;
  double ss = 0.0;
  for (const auto& r : s.per_trial) ss += (r.mle - s.mle_mean) * (r.mle - s.mle_mean);
  s.mle_variance = count > 1 ? ss / (count - 1.0) : 0.0;
  s.mean_posterior_variance = sum_post / count;
  s.mean_excess_kurtosis = sum_kurt / count;

  s.energy_bound = energy_bound(config.alpha, config.energy, config.n);
  s.crb = crb(fisher_closed(ProbeSpec(config.alpha, s.gamma)), config.n);
  s.posterior_to_bound = s.mean_posterior_variance / s.energy_bound;
  s.mle_to_bound = s.mle_variance / s.energy_bound;
  return s;
}

void require_trials(const TrialConfig& config) {
  if (config.trials < 2) throw DomainError("run_trials requires trials >= 2");
}

}  // namespace

SampleSet draw(const ProbeSpec& spec, double chi, long n, RngStream& stream, SamplingMode mode) {
  if (n < 1) throw DomainError("draw: n must be >= 1");
  if (!std::isfinite(chi)) throw DomainError("draw: chi must be finite");

  SampleSet out{spec, chi, {}, stream.seed(), stream.stream_index(), mode};
  out.outcomes.reserve(static_cast<std::size_t>(n));
  const double a = spec.alpha();

  if (mode == SamplingMode::uniform) {
    const double half = std::sqrt(3.0 * mean_energy(spec));
    for (long j = 0; j < n; ++j) {
      out.outcomes.push_back(chi + half * (2.0 * stream.next_uniform() - 1.0));
    }
    return out;
  }

  // |u| = (g/2)^(1/alpha) with g ~ Gamma(1/alpha) has density prop. to exp(-2|u|^alpha).
  const double scale = spec.gamma() * std::exp(-std::numbers::ln2 / a);
  for (long j = 0; j < n; ++j) {
    const double sign = stream.next_sign();
    const double log_g = sample_log_gamma(1.0 / a, stream);
    out.outcomes.push_back(chi + sign * scale * std::exp(log_g / a));
  }
  return out;
}

double negative_log_likelihood(const SampleSet& samples, double chi) {
  const double g = samples.spec.gamma();
  const auto k = static_cast<unsigned>(samples.spec.alpha());
  double sum = 0.0;
  for (double p : samples.outcomes) sum += ipow(std::abs(p - chi) / g, k);
  return 2.0 * sum;
}

double mle(const SampleSet& samples) {
  if (samples.outcomes.empty()) throw DomainError("mle: empty sample set");
  const auto [lo_it, hi_it] = std::minmax_element(samples.outcomes.begin(), samples.outcomes.end());
  const double g = samples.spec.gamma();
  const auto k = static_cast<unsigned>(samples.spec.alpha() - 1);
  // d/dchi of sum |(p - chi)/g|^alpha, up to the positive factor alpha/g.
  auto slope = [&samples, g, k](double chi) {
    double s = 0.0;
    for (double p : samples.outcomes) s -= ipow((p - chi) / g, k);
    return s;
  };
  return minimize_convex_by_slope(slope, *lo_it, *hi_it, kMleRelTol * g);
}

PosteriorGrid posterior(const SampleSet& samples, int grid_points) {
  if (samples.outcomes.empty()) throw DomainError("posterior: empty sample set");
  if (grid_points < 101 || grid_points % 2 == 0) {
    throw DomainError("posterior: grid_points must be odd and >= 101");
  }
  const double center = mle(samples);
  const double n = static_cast<double>(samples.outcomes.size());
  const double half_width = kPosteriorHalfWidthSigmas / std::sqrt(n * fisher_closed(samples.spec));
  const auto m = static_cast<std::size_t>(grid_points);
  const double dx = 2.0 * half_width / static_cast<double>(m - 1);

  PosteriorGrid out;
  out.grid.resize(m);
  out.log_weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.grid[i] = center - half_width + dx * static_cast<double>(i);
    out.log_weights[i] = -negative_log_likelihood(samples, out.grid[i]);
  }

  const auto peak_it = std::max_element(out.log_weights.begin(), out.log_weights.end());
  const double peak = *peak_it;
  out.map_estimate = out.grid[static_cast<std::size_t>(peak_it - out.log_weights.begin())];

  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = std::exp(out.log_weights[i] - peak);
  auto trapezoid = [&w, dx, m](auto&& g) {
    double s = 0.5 * (w.front() * g(0) + w.back() * g(m - 1));
    for (std::size_t i = 1; i + 1 < m; ++i) s += w[i] * g(i);
    return s * dx;
  };
  const double z = trapezoid([](std::size_t) { return 1.0; });
  const double log_z = std::log(z);
  for (std::size_t i = 0; i < m; ++i) {
    out.log_weights[i] -= peak + log_z;
    w[i] /= z;
  }

  out.mean = trapezoid([&out](std::size_t i) { return out.grid[i]; });
  const double mean = out.mean;
  auto central = [&out, mean](unsigned power) {
    return [&out, mean, power](std::size_t i) { return ipow(out.grid[i] - mean, power); };
  };
  out.variance = trapezoid(central(2));
  if (!(out.variance > dx * dx)) {
    throw ResolutionError("posterior: mass concentrated within one grid cell; increase grid_points");
  }
  out.excess_kurtosis = trapezoid(central(4)) / (out.variance * out.variance) - 3.0;
  return out;
}

TrialResult run_single_trial(const TrialConfig& config, std::uint64_t trial_index) {
  const ProbeSpec spec = ProbeSpec::for_energy(config.alpha, config.energy);
  RngStream stream(config.seed, trial_index);
  const SampleSet samples = draw(spec, config.chi, config.n, stream, config.mode);
  TrialResult r;
  r.mle = mle(samples);
  if (config.with_posterior) {
    const PosteriorGrid post = posterior(samples, config.grid_points);
    r.posterior_mean = post.mean;
    r.posterior_variance = post.variance;
    r.excess_kurtosis = post.excess_kurtosis;
  }
  return r;
}

TrialSummary run_trials_serial(const TrialConfig& config) {
  validate_config(config);
  require_trials(config);
  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
  for (long t = 0; t < config.trials; ++t) {
    results[static_cast<std::size_t>(t)] = run_single_trial(config, static_cast<std::uint64_t>(t));
  }
  return summarize(config, std::move(results));
}

TrialSummary run_trials(const TrialConfig& config) {
  validate_config(config);
  require_trials(config);
  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));

  // Exceptions cannot cross the parallel region; keep the lowest-index one.
  std::exception_ptr failure;
  long failed_at = config.trials;

#pragma omp parallel for schedule(dynamic, 4)
  for (long t = 0; t < config.trials; ++t) {
    try {
      results[static_cast<std::size_t>(t)] =
          run_single_trial(config, static_cast<std::uint64_t>(t));
    } catch (...) {
#pragma omp critical(qres_trial_failure)
      if (t < failed_at) {
        failed_at = t;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(config, std::move(results));
}

}  // namespace qres
