#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qres/errors.hpp"
#include "qres/rng.hpp"

namespace qres {

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 607/128, 15 terms).
/// Absolute error is below 1e-12 on [1e-3, 200].
double log_gamma(double x);

/// x^k for non-negative integer k by repeated squaring.
inline double ipow(double x, unsigned k) noexcept {
  double result = 1.0;
  while (k != 0) {
    if (k & 1U) result *= x;
    x *= x;
    k >>= 1U;
  }
  return result;
}

inline constexpr std::size_t kQuadratureEvaluationBudget = 1'000'000;

namespace detail {

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

inline bool panel_less(const Panel& a, const Panel& b) { return a.error < b.error; }

// 7-point Gauss / 15-point Kronrod pair. Error estimate is the raw |K15 - G7|.
template <class F>
Panel gauss_kronrod15(F& f, double lo, double hi) {
  static constexpr double xk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = wk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += wk[j] * pair;
    if (j % 2 == 1) gauss += wg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [lo, hi].
///
/// The panel with the largest error estimate is bisected until the summed
/// error is at most max(abs_tol, rel_tol * |result|). Throws AccuracyError
/// (carrying the current estimate) once `max_evaluations` would be exceeded.
template <class F>
double integrate(F&& f, double lo, double hi, double rel_tol, double abs_tol = 0.0,
                 std::size_t max_evaluations = kQuadratureEvaluationBudget) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate: requires finite lo < hi");
  }
  if (!(rel_tol > 0.0) || abs_tol < 0.0) {
    throw DomainError("integrate: requires rel_tol > 0 and abs_tol >= 0");
  }

  std::vector<detail::Panel> heap;
  heap.push_back(detail::gauss_kronrod15(f, lo, hi));
  std::size_t evaluations = 15;

  auto totals = [&heap] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  for (;;) {
    const auto [value, error] = totals();
    if (!std::isfinite(value)) {
      throw AccuracyError("integrate: non-finite integrand", value);
    }
    if (error <= std::max(abs_tol, rel_tol * std::abs(value))) {
      return value;
    }
    if (evaluations + 30 > max_evaluations) {
      throw AccuracyError("integrate: evaluation budget of " + std::to_string(max_evaluations) +
                              " exhausted (error estimate " + std::to_string(error) + ")",
                          value);
    }

    std::pop_heap(heap.begin(), heap.end(), detail::panel_less);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      throw AccuracyError("integrate: panel width reached machine resolution", value);
    }
    heap.push_back(detail::gauss_kronrod15(f, worst.lo, mid));
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    heap.push_back(detail::gauss_kronrod15(f, mid, worst.hi));
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    evaluations += 30;
  }
}

/// Golden-section minimization of a convex (unimodal) f on [lo, hi].
/// Returns a point within `tol` of the minimizer.
template <class F>
double minimize_1d(F&& f, double lo, double hi, double tol) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw DomainError("minimize_1d: invalid bracket or tolerance");
  }
  constexpr double kInvPhi = 0.618033988749894848204586834365638;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 2.0 * tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // Boundary minimizers: golden section never evaluates the endpoints.
  const double mid = 0.5 * (a + b);
  double best = mid;
  double fbest = f(mid);
  if (a == lo && f(lo) < fbest) {
    best = lo;
    fbest = f(lo);
  }
  if (b == hi && f(hi) < fbest) best = hi;
  return best;
}

/// Minimizer of a strictly convex function given its derivative, by bisection
/// on the sign of the slope. Exact to `tol` independent of how flat f is.
template <class Slope>
double minimize_convex_by_slope(Slope&& slope, double lo, double hi, double tol) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw DomainError("minimize_convex_by_slope: invalid bracket or tolerance");
  }
  if (lo == hi || slope(lo) >= 0.0) return lo;
  if (slope(hi) <= 0.0) return hi;
  double a = lo;
  double b = hi;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double s = slope(mid);
    if (s == 0.0) return mid;
    if (s < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Natural log of a Gamma(shape, 1) variate. Working in logs keeps tiny
/// shapes (where the variate underflows double) exact for later powers.
double sample_log_gamma(double shape, RngStream& stream);

/// Gamma(shape, 1) variate: Marsaglia-Tsang, with the U^(1/shape) boost
/// for shape < 1.
double sample_gamma(double shape, RngStream& stream);

}  // namespace qres
