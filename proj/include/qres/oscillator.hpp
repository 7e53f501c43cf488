#pragma once

namespace qres {

/// Harmonic oscillator H = p^2 + omega^2 q^2 probed with G = x, M = p.
struct HOBoundInput {
  double omega = 1.0;
  double energy = 1.0;  // <H>
  long n = 1;           // repetitions
};

/// <H>/omega^2 at or above this is treated as the Delta x >> 1 regime.
inline constexpr double kLargeDeltaXThreshold = 10.0;

struct HOBound {
  double bound = 0.0;  // omega^2 / (4 N <H>)
  bool in_validity_regime = false;
};

/// Energy-limited bound for the oscillator. The flag is false when
/// <H>/omega^2 is too small for <H> ~ omega^2 (Delta x)^2 to hold, which
/// includes the free-particle limit omega -> 0.
HOBound ho_energy_bound(const HOBoundInput& input);

/// Small-signal number-shift channel |n> -> |n> + sqrt(chi/(n+1)) |n+1>.
class NumberShiftModel {
 public:
  static constexpr double kMaxChi = 0.1;

  /// Requires 0 <= chi <= 0.1 and chi/(n+1) < 1.
  NumberShiftModel(long n_level, double chi);

  long n_level() const noexcept { return n_level_; }
  double chi() const noexcept { return chi_; }

  /// First-order (unnormalized) jump weight chi/(n+1).
  double jump_weight() const noexcept { return chi_ / static_cast<double>(n_level_ + 1); }

 private:
  long n_level_;
  double chi_;
};

/// Number-measurement statistics of the normalized output state.
struct TwoOutcomeDistribution {
  long low_outcome = 0;    // n
  double p_low = 1.0;      // probability of n
  double p_high = 0.0;     // probability of n + 1 (q)
  double q_first_order = 0.0;  // unnormalized chi/(n+1)
};

TwoOutcomeDistribution number_shift_distribution(const NumberShiftModel& model);

enum class MeanConvention {
  normalized,   // exact mean of the normalized two-outcome state
  first_order,  // <n> -> <n> + chi, as written for the unnormalized map
};

struct MeanNumber {
  double normalized = 0.0;
  double first_order = 0.0;

  double select(MeanConvention c) const noexcept {
    return c == MeanConvention::normalized ? normalized : first_order;
  }
};

MeanNumber mean_number(const NumberShiftModel& model);

struct NumberShiftFisher {
  double exact = 0.0;   // Bernoulli Fisher information of the normalized q(chi)
  double approx = 0.0;  // 1 / (chi (n+1))
};

/// Throws UnboundedInformationError at chi = 0, where 1/(chi (n+1)) diverges.
NumberShiftFisher number_shift_fisher(const NumberShiftModel& model);

/// chi (<n> + 1) / N, from the approximate Fisher information.
double number_shift_crb(const NumberShiftModel& model, long n_repetitions);

}  // namespace qres
