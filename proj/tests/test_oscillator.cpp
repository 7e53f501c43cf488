#include <cmath>

#include "doctest.h"
#include "qres/errors.hpp"
#include "qres/metrology.hpp"
#include "qres/oscillator.hpp"

using namespace qres;

namespace {

// Fisher information of the two-outcome distribution by central differences.
double fisher_finite_difference(long n, double chi) {
  const double h = 1e-6 * chi;
  const auto lo = number_shift_distribution(NumberShiftModel(n, chi - h));
  const auto hi = number_shift_distribution(NumberShiftModel(n, chi + h));
  const auto mid = number_shift_distribution(NumberShiftModel(n, chi));
  const double d_low = (hi.p_low - lo.p_low) / (2.0 * h);
  const double d_high = (hi.p_high - lo.p_high) / (2.0 * h);
  return d_low * d_low / mid.p_low + d_high * d_high / mid.p_high;
}

}  // namespace

TEST_CASE("oscillator energy bound") {
  const auto b = ho_energy_bound({1.0, 1.0, 1});
  CHECK(b.bound == 0.25);
  CHECK(ho_energy_bound({1.0, 2.0, 1}).bound == 0.125);
  for (double w : {1.0, 2.0, 3.0}) {
    CHECK(ho_energy_bound({w, 50.0, 4}).bound ==
          doctest::Approx(w * w * ho_energy_bound({1.0, 50.0, 4}).bound).epsilon(1e-15));
  }
  CHECK(ho_energy_bound({1.0, 100.0, 1}).in_validity_regime);
  const auto free_limit = ho_energy_bound({1e-4, 1.0, 1});
  CHECK(free_limit.bound < 1e-8);
  CHECK(free_limit.in_validity_regime);
  CHECK_FALSE(ho_energy_bound({1.0, 1.0, 1}).in_validity_regime);
  CHECK_THROWS_AS(ho_energy_bound({0.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(ho_energy_bound({1.0, -1.0, 1}), DomainError);
  CHECK_THROWS_AS(ho_energy_bound({1.0, 1.0, 0}), DomainError);
}

TEST_CASE("number shift model validation") {
  CHECK_NOTHROW(NumberShiftModel(0, 0.1));
  CHECK_THROWS_AS(NumberShiftModel(0, 0.2), DomainError);
  CHECK_THROWS_AS(NumberShiftModel(0, -0.01), DomainError);
  CHECK_THROWS_AS(NumberShiftModel(-1, 0.01), DomainError);
}

TEST_CASE("number shift distribution") {
  const auto identity = number_shift_distribution(NumberShiftModel(3, 0.0));
  CHECK(identity.p_low == 1.0);
  CHECK(identity.p_high == 0.0);
  CHECK(identity.low_outcome == 3);

  const auto d = number_shift_distribution(NumberShiftModel(0, 0.01));
  CHECK(d.p_high == doctest::Approx(0.01 / 1.01).epsilon(1e-14));
  CHECK(d.q_first_order == doctest::Approx(0.01));

  for (long n = 0; n <= 100; ++n) {
    for (int k = 0; k <= 20; ++k) {
      const double chi = 0.005 * k;
      const auto x = number_shift_distribution(NumberShiftModel(n, chi));
      CHECK(x.p_low >= 0.0);
      CHECK(x.p_high <= 1.0);
      CHECK(std::abs(x.p_low + x.p_high - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("mean number under both conventions") {
  const auto m0 = mean_number(NumberShiftModel(0, 0.01));
  CHECK(m0.normalized == doctest::Approx(0.01 / 1.01).epsilon(1e-14));
  CHECK(m0.first_order == doctest::Approx(0.01));
  CHECK(std::abs(m0.normalized - m0.first_order) < 0.01 * 0.01 * 1.01);

  const auto zero = mean_number(NumberShiftModel(7, 0.0));
  CHECK(zero.select(MeanConvention::normalized) == 7.0);
  CHECK(zero.select(MeanConvention::first_order) == 7.0);

  const auto m4 = mean_number(NumberShiftModel(4, 0.05));
  CHECK(m4.normalized - 4.0 == doctest::Approx(0.01).epsilon(0.02));
  CHECK(m4.first_order - 4.0 == doctest::Approx(0.05));
  // Mean of the normalized distribution, computed directly.
  const auto d4 = number_shift_distribution(NumberShiftModel(4, 0.05));
  CHECK(m4.normalized == doctest::Approx(4.0 * d4.p_low + 5.0 * d4.p_high).epsilon(1e-14));
}

TEST_CASE("number shift Fisher information") {
  CHECK(number_shift_fisher(NumberShiftModel(0, 0.01)).approx == doctest::Approx(100.0));
  const auto f9 = number_shift_fisher(NumberShiftModel(9, 0.05));
  CHECK(f9.approx == doctest::Approx(2.0));
  CHECK(std::abs(f9.exact - 2.0) < 0.2);
  CHECK(number_shift_crb(NumberShiftModel(0, 0.01), 1) == doctest::Approx(0.01));
  CHECK_THROWS_AS(number_shift_fisher(NumberShiftModel(2, 0.0)), UnboundedInformationError);

  for (long n : {0L, 3L, 40L}) {
    for (double chi : {0.002, 0.03, 0.09}) {
      const double fd = fisher_finite_difference(n, chi);
      CHECK(number_shift_fisher(NumberShiftModel(n, chi)).exact == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("leading-order agreement |F chi (n+1) - 1| <= 2 chi") {
  for (long n = 0; n <= 100; ++n) {
    for (int k = 1; k <= 100; ++k) {
      const double chi = 1e-3 * k;
      const auto f = number_shift_fisher(NumberShiftModel(n, chi));
      CHECK(std::abs(f.exact * chi * static_cast<double>(n + 1) - 1.0) <= 2.0 * chi);
    }
  }
}

TEST_CASE("number-shift bound scales with <n> + 1") {
  for (double chi : {0.01, 0.05}) {
    CHECK(number_shift_crb(NumberShiftModel(3, chi), 20) ==
          doctest::Approx(4.0 * number_shift_crb(NumberShiftModel(0, chi), 20)));
  }
}

TEST_CASE("oscillator and free particle respond oppositely to energy") {
  const double hs[] = {0.1, 1.0, 10.0};
  for (int i = 0; i + 1 < 3; ++i) {
    CHECK(ho_energy_bound({1.0, hs[i + 1], 10}).bound < ho_energy_bound({1.0, hs[i], 10}).bound);
    CHECK(energy_bound(20, hs[i + 1], 10) > energy_bound(20, hs[i], 10));
  }
}
