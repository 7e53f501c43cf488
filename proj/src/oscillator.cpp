#include "qres/oscillator.hpp"

#include <cmath>

#include "qres/errors.hpp"

namespace qres {

HOBound ho_energy_bound(const HOBoundInput& input) {
  if (!(input.omega > 0.0) || !std::isfinite(input.omega)) {
    throw DomainError("omega must be positive and finite");
  }
  if (!(input.energy > 0.0) || !std::isfinite(input.energy)) {
    throw DomainError("mean energy must be positive and finite");
  }
  if (input.n < 1) throw DomainError("repetitions N must be >= 1");

  const double w2 = input.omega * input.omega;
  return HOBound{w2 / (4.0 * static_cast<double>(input.n) * input.energy),
                 input.energy / w2 >= kLargeDeltaXThreshold};
}

NumberShiftModel::NumberShiftModel(long n_level, double chi) : n_level_(n_level), chi_(chi) {
  if (n_level < 0) throw DomainError("Fock level n must be >= 0");
  if (!(chi >= 0.0) || chi > kMaxChi) {
    throw DomainError("number-shift signal chi must lie in [0, 0.1]");
  }
  if (!(jump_weight() < 1.0)) throw DomainError("chi/(n+1) must be below 1");
}

TwoOutcomeDistribution number_shift_distribution(const NumberShiftModel& model) {
  const double r = model.jump_weight();
  const double q = r / (1.0 + r);
  return TwoOutcomeDistribution{model.n_level(), 1.0 / (1.0 + r), q, r};
}

MeanNumber mean_number(const NumberShiftModel& model) {
  const double n = static_cast<double>(model.n_level());
  const double chi = model.chi();
  return MeanNumber{(n + chi) / (1.0 + model.jump_weight()), n + chi};
}

NumberShiftFisher number_shift_fisher(const NumberShiftModel& model) {
  if (model.chi() == 0.0) {
    throw UnboundedInformationError(
        "number-shift Fisher information 1/(chi (n+1)) diverges as chi -> 0");
  }
  const double n1 = static_cast<double>(model.n_level() + 1);
  const double r = model.jump_weight();
  const double q = r / (1.0 + r);
  const double dq = 1.0 / (n1 * (1.0 + r) * (1.0 + r));
  return NumberShiftFisher{dq * dq * (1.0 / q + 1.0 / (1.0 - q)), 1.0 / (model.chi() * n1)};
}

double number_shift_crb(const NumberShiftModel& model, long n_repetitions) {
  if (n_repetitions < 1) throw DomainError("repetitions N must be >= 1");
  return 1.0 / (static_cast<double>(n_repetitions) * number_shift_fisher(model).approx);
}

}  // namespace qres
