#include "qres/probe.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qres/errors.hpp"
#include "qres/numerics.hpp"

namespace qres {
namespace {

constexpr double kQuadratureRelTol = 1e-12;

// ln of the density prefactor alpha 2^(1/alpha) / (2 gamma Gamma(1/alpha)).
double log_normalization(const ProbeSpec& spec) {
  const double a = spec.alpha();
  return std::log(a) + (1.0 / a - 1.0) * std::numbers::ln2 - std::log(spec.gamma()) -
         log_gamma(1.0 / a);
}

// Integrate an even integrand over the truncation window as 2 * [0, w].
template <class F>
double integrate_even(const ProbeSpec& spec, F&& f) {
  return 2.0 * integrate(f, 0.0, window_half_width(spec), kQuadratureRelTol);
}

}  // namespace

void validate_alpha(int alpha) {
  if (alpha < kMinAlpha || alpha > kMaxAlpha || alpha % 2 != 0) {
    throw DomainError("alpha must be an even integer in [2, 200], got " + std::to_string(alpha));
  }
}

ProbeSpec::ProbeSpec(int alpha, double gamma) : alpha_(alpha), gamma_(gamma) {
  validate_alpha(alpha);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be positive and finite");
  }
}

ProbeSpec ProbeSpec::for_energy(int alpha, double energy) {
  return ProbeSpec(alpha, gamma_for_energy(alpha, energy));
}

double window_half_width(const ProbeSpec& spec) {
  return spec.gamma() * std::pow(kWindowExponent, 1.0 / spec.alpha());
}

double log_density(const ProbeSpec& spec, double p) {
  const double u = std::abs(p / spec.gamma());
  return log_normalization(spec) - 2.0 * ipow(u, static_cast<unsigned>(spec.alpha()));
}

double density(const ProbeSpec& spec, double p) { return std::exp(log_density(spec, p)); }

double wavefunction(const ProbeSpec& spec, double p) {
  return std::exp(0.5 * log_density(spec, p));
}

double wavefunction_derivative(const ProbeSpec& spec, double p) {
  const double a = spec.alpha();
  const double u = p / spec.gamma();
  // Even alpha: |u|^(a-1) sign(u) = u^(a-1).
  return -(a / spec.gamma()) * ipow(u, static_cast<unsigned>(spec.alpha() - 1)) *
         wavefunction(spec, p);
}

double log_density_slope(const ProbeSpec& spec, double p) {
  const double a = spec.alpha();
  const double u = p / spec.gamma();
  return -(2.0 * a / spec.gamma()) * ipow(u, static_cast<unsigned>(spec.alpha() - 1));
}

double log_density_curvature(const ProbeSpec& spec, double p) {
  const double a = spec.alpha();
  const double u = p / spec.gamma();
  return -(2.0 * a * (a - 1.0) / (spec.gamma() * spec.gamma())) *
         ipow(u, static_cast<unsigned>(spec.alpha() - 2));
}

double absolute_moment(const ProbeSpec& spec, unsigned k) {
  if (k == 0) return 1.0;
  const double a = spec.alpha();
  const double kk = k;
  return std::exp(kk * std::log(spec.gamma()) - (kk / a) * std::numbers::ln2 +
                  log_gamma((kk + 1.0) / a) - log_gamma(1.0 / a));
}

double mean_energy(const ProbeSpec& spec) { return absolute_moment(spec, 2); }

double gamma_for_energy(int alpha, double energy) {
  validate_alpha(alpha);
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw DomainError("mean energy must be positive and finite");
  }
  const double a = alpha;
  return std::sqrt(energy *
                   std::exp((2.0 / a) * std::numbers::ln2 + log_gamma(1.0 / a) - log_gamma(3.0 / a)));
}

double position_variance(const ProbeSpec& spec) {
  return integrate_even(spec, [&spec](double p) {
    const double d = wavefunction_derivative(spec, p);
    return d * d;
  });
}

double uncertainty_product(const ProbeSpec& spec) {
  const double a = spec.alpha();
  return std::exp(2.0 * std::log(a) + log_gamma(2.0 - 1.0 / a) + log_gamma(3.0 / a) -
                  2.0 * log_gamma(1.0 / a));
}

}  // namespace qres
