#include "qres/metrology.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qres/errors.hpp"
#include "qres/numerics.hpp"

namespace qres {
namespace {

constexpr double kQuadratureRelTol = 1e-12;
constexpr double kRouteAgreement = 1e-6;

void validate_repetitions(long n) {
  if (n < 1) throw DomainError("repetitions N must be >= 1");
}

void validate_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw DomainError("mean energy must be positive and finite");
  }
}

void validate_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

double fisher_closed(const ProbeSpec& spec) {
  const double a = spec.alpha();
  const double g = spec.gamma();
  return std::exp(2.0 * std::log(a) + (2.0 / a) * std::numbers::ln2 + log_gamma(2.0 - 1.0 / a) -
                  log_gamma(1.0 / a)) /
         (g * g);
}

double fisher_numeric(const ProbeSpec& spec, double chi) {
  validate_finite(chi, "chi");
  // (dP/dchi)^2 / P = P(p - chi) * [d/dp ln P](p - chi)^2.
  auto integrand = [&spec, chi](double p) {
    const double s = log_density_slope(spec, p - chi);
    return density(spec, p - chi) * s * s;
  };
  const double w = window_half_width(spec);
  return integrate(integrand, chi - w, chi, kQuadratureRelTol) +
         integrate(integrand, chi, chi + w, kQuadratureRelTol);
}

double crb(double fisher, long n) {
  if (!(fisher > 0.0) || !std::isfinite(fisher)) {
    throw DomainError("Fisher information must be positive and finite");
  }
  validate_repetitions(n);
  return 1.0 / (static_cast<double>(n) * fisher);
}

double normalized_energy_bound(int alpha) {
  validate_alpha(alpha);
  // Gaussian: Gamma^2(1/2) / (4 Gamma^2(3/2)) = 1.
  if (alpha == 2) return 1.0;
  const double a = alpha;
  return std::exp(2.0 * log_gamma(1.0 / a) - 2.0 * std::log(a) - log_gamma(2.0 - 1.0 / a) -
                  log_gamma(3.0 / a));
}

double energy_bound(int alpha, double energy, long n) {
  validate_energy(energy);
  validate_repetitions(n);
  return energy * normalized_energy_bound(alpha) / static_cast<double>(n);
}

double energy_bound_approx(int alpha, double energy, long n) {
  validate_alpha(alpha);
  validate_energy(energy);
  validate_repetitions(n);
  return 3.0 * energy / (static_cast<double>(n) * alpha);
}

double error_propagation_bound(double energy, long n) {
  validate_energy(energy);
  validate_repetitions(n);
  return energy / static_cast<double>(n);
}

double repetitions_closed_form(int alpha) {
  validate_alpha(alpha);
  const double a = alpha;
  return 2.0 * std::exp(log_gamma(2.0 - 3.0 / a) + log_gamma(1.0 / a) -
                        2.0 * log_gamma(1.0 - 1.0 / a)) -
         2.0;
}

double repetitions_quadrature(int alpha) {
  validate_alpha(alpha);
  if (alpha < 4) {
    throw DomainError("N_B quadrature requires alpha >= 4");
  }
  // N_B is scale free; gamma = 1 throughout.
  const ProbeSpec spec(alpha, 1.0);
  // With L = ln P: P''^2/P - P'^4/(3P^3) = P [(L'' + L'^2)^2 - L'^4/3].
  auto integrand = [&spec](double p) {
    const double slope = log_density_slope(spec, p);
    const double curvature = log_density_curvature(spec, p);
    const double s2 = slope * slope;
    const double second = curvature + s2;
    return density(spec, p) * (second * second - s2 * s2 / 3.0);
  };
  const double integral =
      2.0 * integrate(integrand, 0.0, window_half_width(spec), kQuadratureRelTol);
  const double f = fisher_closed(spec);
  return 2.0 * integral / (f * f) - 2.0;
}

RepetitionsEstimate repetitions_required(int alpha) {
  RepetitionsEstimate out;
  out.closed_form = repetitions_closed_form(alpha);
  if (alpha < 4) {
    out.closed_form_only = true;
    return out;
  }
  out.quadrature = repetitions_quadrature(alpha);
  const double rel = std::abs(*out.quadrature - out.closed_form) / std::abs(out.closed_form);
  if (rel > kRouteAgreement) {
    throw AccuracyError("N_B closed form and quadrature disagree (relative " +
                            std::to_string(rel) + ")",
                        out.closed_form);
  }
  return out;
}

double scenario_chi_electric(double charge, double field, double tau) {
  validate_finite(charge, "charge");
  validate_finite(field, "field");
  validate_finite(tau, "tau");
  return charge * field * tau;
}

double scenario_chi_stern_gerlach(double magnetic_moment, double field_gradient, double tau) {
  validate_finite(magnetic_moment, "magnetic moment");
  validate_finite(field_gradient, "field gradient");
  validate_finite(tau, "tau");
  return magnetic_moment * field_gradient * tau;
}

BoundReport bound_report(const ProbeSpec& spec, long n) {
  validate_repetitions(n);
  BoundReport r;
  r.alpha = spec.alpha();
  r.gamma = spec.gamma();
  r.mean_energy = mean_energy(spec);
  r.repetitions = n;
  r.fisher = fisher_closed(spec);
  r.quantum_fisher = 4.0 * position_variance(spec);
  r.crb = crb(r.fisher, n);
  r.energy_bound = energy_bound(r.alpha, r.mean_energy, n);
  r.approx_bound = energy_bound_approx(r.alpha, r.mean_energy, n);
  r.error_prop_bound = error_propagation_bound(r.mean_energy, n);
  r.n_required = repetitions_closed_form(r.alpha);
  r.uncertainty_product = uncertainty_product(spec);
  return r;
}

BoundReport bound_report(int alpha, double energy, long n) {
  auto r = bound_report(ProbeSpec::for_energy(alpha, energy), n);
  // Report the requested energy rather than its gamma round trip.
  r.mean_energy = energy;
  r.energy_bound = energy_bound(alpha, energy, n);
  r.approx_bound = energy_bound_approx(alpha, energy, n);
  r.error_prop_bound = error_propagation_bound(energy, n);
  return r;
}

}  // namespace qres
