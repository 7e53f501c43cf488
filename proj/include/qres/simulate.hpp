#pragma once

#include <cstdint>
#include <vector>

#include "qres/probe.hpp"
#include "qres/rng.hpp"

namespace qres {

enum class SamplingMode {
  exact,    // draw from the probe density itself
  uniform,  // uniform on chi +- sqrt(3 <H>), the flat-top shortcut for large alpha
};

/// N momentum outcomes recorded under a true signal chi.
struct SampleSet {
  ProbeSpec spec;
  double chi_true = 0.0;
  std::vector<double> outcomes;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  SamplingMode mode = SamplingMode::exact;
};

/// Discretized posterior over the estimator chi~ for a flat prior.
struct PosteriorGrid {
  std::vector<double> grid;         // ascending, uniform spacing
  std::vector<double> log_weights;  // ln density, trapezoid-normalized
  double mean = 0.0;
  double variance = 0.0;
  double map_estimate = 0.0;
  double excess_kurtosis = 0.0;  // diagnostic only

  double spacing() const { return grid[1] - grid[0]; }
};

inline constexpr int kDefaultGridPoints = 2001;

/// Grid half-width in units of the Cramer-Rao standard deviation.
inline constexpr double kPosteriorHalfWidthSigmas = 8.0;

/// n outcomes p = chi + s gamma 2^(-1/alpha) g^(1/alpha), s = +-1, g ~ Gamma(1/alpha).
/// Advances `stream`; provenance is recorded from its (seed, index).
SampleSet draw(const ProbeSpec& spec, double chi, long n, RngStream& stream,
               SamplingMode mode = SamplingMode::exact);

/// Negative log-likelihood up to constants: 2 sum |(p_j - chi)/gamma|^alpha.
double negative_log_likelihood(const SampleSet& samples, double chi);

/// Maximum-likelihood estimate of chi, to 1e-10 gamma.
double mle(const SampleSet& samples);

/// Flat-prior posterior on a grid centered at the MLE with half-width
/// 8 / sqrt(N F). `grid_points` must be odd and >= 101.
PosteriorGrid posterior(const SampleSet& samples, int grid_points = kDefaultGridPoints);

struct TrialConfig {
  int alpha = 20;
  double energy = 1.0 / 3.0;
  long n = 50;
  double chi = 0.0;
  long trials = 200;
  std::uint64_t seed = 42;
  int grid_points = kDefaultGridPoints;
  SamplingMode mode = SamplingMode::exact;
  bool with_posterior = true;
};

struct TrialResult {
  double mle = 0.0;
  double posterior_mean = 0.0;
  double posterior_variance = 0.0;
  double excess_kurtosis = 0.0;
};

struct TrialSummary {
  TrialConfig config;
  double gamma = 0.0;
  std::vector<TrialResult> per_trial;
  double mle_mean = 0.0;
  double mle_variance = 0.0;  // unbiased sample variance across trials
  double mean_posterior_variance = 0.0;
  double mean_excess_kurtosis = 0.0;
  double energy_bound = 0.0;
  double crb = 0.0;
  double posterior_to_bound = 0.0;  // mean_posterior_variance / energy_bound
  double mle_to_bound = 0.0;        // mle_variance / energy_bound
};

/// One trial: stream (seed, trial_index), draw, MLE, optional posterior.
TrialResult run_single_trial(const TrialConfig& config, std::uint64_t trial_index);

/// Repeated-trial study, trials parallelized with OpenMP. Aggregation is a
/// fixed-order reduction, so the result is bit-identical to
/// run_trials_serial under any thread count or schedule.
TrialSummary run_trials(const TrialConfig& config);

/// Single-threaded reference for run_trials.
TrialSummary run_trials_serial(const TrialConfig& config);

}  // namespace qres
