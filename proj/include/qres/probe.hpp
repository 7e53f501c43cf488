#pragma once

namespace qres {

inline constexpr int kMinAlpha = 2;
inline constexpr int kMaxAlpha = 200;

/// Exponent W of the truncation window |p| <= gamma * W^(1/alpha). The
/// density there is exp(-2W) relative to its peak, below 1e-300.
inline constexpr double kWindowExponent = 350.0;

/// Generalized-Gaussian momentum probe: psi(p) proportional to
/// exp(-|p/gamma|^alpha), with alpha an even integer in [2, 200].
class ProbeSpec {
 public:
  /// Throws DomainError on odd / out-of-range alpha or non-positive gamma.
  ProbeSpec(int alpha, double gamma);

  /// Probe of shape alpha whose mean energy <H> = (Delta p)^2 equals `energy`.
  static ProbeSpec for_energy(int alpha, double energy);

  int alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }

  friend bool operator==(const ProbeSpec&, const ProbeSpec&) = default;

 private:
  int alpha_;
  double gamma_;
};

/// Throws DomainError unless alpha is even and within [kMinAlpha, kMaxAlpha].
void validate_alpha(int alpha);

/// Half-width of the quadrature window, gamma * W^(1/alpha).
double window_half_width(const ProbeSpec& spec);

double log_density(const ProbeSpec& spec, double p);

/// Momentum statistics P(p) = |psi(p)|^2 of the unshifted probe.
double density(const ProbeSpec& spec, double p);

/// Real momentum wavefunction psi(p) and its analytic derivative.
double wavefunction(const ProbeSpec& spec, double p);
double wavefunction_derivative(const ProbeSpec& spec, double p);

/// d/dp ln P(p) and d^2/dp^2 ln P(p), analytic.
double log_density_slope(const ProbeSpec& spec, double p);
double log_density_curvature(const ProbeSpec& spec, double p);

/// <|p|^k> = gamma^k 2^(-k/alpha) Gamma((k+1)/alpha) / Gamma(1/alpha).
double absolute_moment(const ProbeSpec& spec, unsigned k);

/// <H> = (Delta p)^2 = <p^2>, since <p> = 0.
double mean_energy(const ProbeSpec& spec);

/// The unique gamma giving mean_energy == energy for this alpha.
double gamma_for_energy(int alpha, double energy);

/// (Delta x)^2 = integral of psi'(p)^2 dp, by quadrature.
double position_variance(const ProbeSpec& spec);

/// 4 (Delta x)^2 (Delta p)^2 in closed form; depends on alpha only, equals 1
/// for the Gaussian.
double uncertainty_product(const ProbeSpec& spec);

}  // namespace qres
