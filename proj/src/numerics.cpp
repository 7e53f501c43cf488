#include "qres/numerics.hpp"

#include <array>
#include <cmath>

namespace qres {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  static constexpr std::array<double, 14> kCoefficients = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double series = 0.999999999999997092;
  for (double c : kCoefficients) series += c / ++y;
  return tmp + std::log(2.5066282746310005 * series / x);
}

namespace {

double log_gamma_at_least_one(double shape, RngStream& stream) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double log_u = std::log(stream.next_uniform());
    if (log_u < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return std::log(d) + std::log(v);
    }
  }
}

}  // namespace

double sample_log_gamma(double shape, RngStream& stream) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("sample_gamma: shape must be positive and finite");
  }
  if (shape >= 1.0) return log_gamma_at_least_one(shape, stream);
  const double boosted = log_gamma_at_least_one(shape + 1.0, stream);
  return boosted + std::log(stream.next_uniform()) / shape;
}

double sample_gamma(double shape, RngStream& stream) {
  return std::exp(sample_log_gamma(shape, stream));
}

}  // namespace qres
