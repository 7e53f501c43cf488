#pragma once

#include <stdexcept>
#include <string>

namespace qres {

// Invalid argument or parameter outside a function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine could not reach its requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// Posterior grid too coarse to resolve the distribution.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fisher information diverges (non-regular model point).
class UnboundedInformationError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qres
