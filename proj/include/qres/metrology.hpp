#pragma once

#include <optional>

#include "qres/probe.hpp"

namespace qres {

/// Resolution quantities for one probe family member and N repetitions.
struct BoundReport {
  int alpha = 0;
  double gamma = 0.0;
  double mean_energy = 0.0;       // <H>
  long repetitions = 0;           // N
  double fisher = 0.0;            // F, closed form
  double quantum_fisher = 0.0;    // F_Q = 4 (Delta x)^2, by quadrature
  double crb = 0.0;               // 1 / (N F)
  double energy_bound = 0.0;      // <H> Gamma^2(1/a) / (N a^2 Gamma(2-1/a) Gamma(3/a))
  double approx_bound = 0.0;      // 3 <H> / (N a)
  double error_prop_bound = 0.0;  // <H> / N, variance of the sample mean
  double n_required = 0.0;        // N_B, closed form
  double uncertainty_product = 0.0;
};

/// Fisher information of the shift model, alpha^2 2^(2/alpha) Gamma(2-1/alpha) / (gamma^2 Gamma(1/alpha)).
double fisher_closed(const ProbeSpec& spec);

/// Fisher information integral of (dP/dchi)^2 / P for P(p|chi) = P(p - chi),
/// evaluated by quadrature at the given chi.
double fisher_numeric(const ProbeSpec& spec, double chi = 0.0);

/// Cramer-Rao bound 1 / (n F).
double crb(double fisher, long n);

/// Cramer-Rao bound with gamma eliminated in favour of the mean energy.
double energy_bound(int alpha, double energy, long n);

/// n * energy_bound / energy: depends on alpha only.
double normalized_energy_bound(int alpha);

/// Large-alpha form 3 <H> / (n alpha).
double energy_bound_approx(int alpha, double energy, long n);

/// Variance <H>/n of the sample-mean estimator (error propagation).
double error_propagation_bound(double energy, long n);

struct RepetitionsEstimate {
  double closed_form = 0.0;
  std::optional<double> quadrature;  // absent for alpha = 2
  bool closed_form_only = false;
};

/// Closed form 2 Gamma(2-3/a) Gamma(1/a) / Gamma^2(1-1/a) - 2.
double repetitions_closed_form(int alpha);

/// Direct quadrature of the N_B integral with analytic dP/dp and d^2P/dp^2.
/// Requires alpha >= 4.
double repetitions_quadrature(int alpha);

/// Both routes to N_B. Throws AccuracyError if they disagree beyond 1e-6.
RepetitionsEstimate repetitions_required(int alpha);

double scenario_chi_electric(double charge, double field, double tau);
double scenario_chi_stern_gerlach(double magnetic_moment, double field_gradient, double tau);

BoundReport bound_report(int alpha, double energy, long n);
BoundReport bound_report(const ProbeSpec& spec, long n);

}  // namespace qres
