#include <doctest.h>

#include <random>

#include "chebias/lfunc.hpp"
#include "chebias/numkernel.hpp"
#include "oracles/frozen_oracles.hpp"
#include "support.hpp"

using namespace chebias;

namespace {
const DirichletCharacter c3 = DirichletCharacter::chi3();
const DirichletCharacter c4 = DirichletCharacter::chi4();
}  // namespace

TEST_CASE("characters") {
  CHECK(c3(1) == 1);
  CHECK(c3(2) == -1);
  CHECK(c3(3) == 0);
  CHECK(c3(-1) == -1);
  CHECK(c4(3) == -1);
  CHECK(c4(5) == 1);
  CHECK(c4(6) == 0);
  CHECK(DirichletCharacter::trivial()(12) == 1);
  CHECK(c3.first_nonzero_above_one() == 2);
  CHECK(c4.first_nonzero_above_one() == 3);
  CHECK(c3 != c4);
}

TEST_CASE("zeta values") {
  CHECK(agree(zeta(HPReal(2L, 50), 50), "1.6449340668482264364724151666460251892189499012068") >= 49);
  CHECK(agree(zeta(HPReal(3L, 50), 50), oracle::kZeta3) >= 48);
  CHECK(agree(zeta(HPReal(5L, 50), 50), oracle::kZeta5) >= 48);
  CHECK(agree(zeta_prime(HPReal(2L, 50), 50), oracle::kZetaPrime2) >= 48);
  CHECK_THROWS_AS(zeta(HPReal(1L, 30), 30), std::domain_error);
  // ζ(2^10) − 1 underflows the precision but ζ' is tiny and negative
  CHECK(zeta_prime(HPReal(1024L, 50), 50) < HPReal(0L, 50));
}

TEST_CASE("L values and derivatives") {
  CHECK(agree(l_value(c4, HPReal(2L, 50), 50), oracle::kCatalan) >= 48);
  CHECK(agree(l_value(c3, HPReal(2L, 50), 50), oracle::kL2Chi3) >= 48);
  CHECK(agree(l_value(c3, HPReal(3L, 50), 50), oracle::kL3Chi3) >= 48);
  CHECK(agree(l_value(c3, HPReal(1L, 50), 50), oracle::kL1Chi3) >= 48);
  CHECK(agree(l_value(c4, HPReal(1L, 50), 50), oracle::kL1Chi4) >= 48);
  CHECK(agree(l_prime(c3, HPReal(1L, 50), 50), oracle::kLPrime1Chi3) >= 47);
  CHECK(agree(l_prime(c4, HPReal(1L, 50), 50), oracle::kLPrime1Chi4) >= 47);
  CHECK(agree(l_prime(c4, HPReal(2L, 50), 50), oracle::kLPrime2Chi4) >= 47);
  // L(3, χ₄) = π³/32
  const HPReal pi = const_pi(60);
  CHECK(agreeing_digits(l_value(c4, HPReal(3L, 50), 50), pi * pi * pi / 32L) >= 48);
  CHECK_THROWS_AS(l_value(c3, HPReal(0.5, 30), 30), std::domain_error);
}

TEST_CASE("L'/L(1,chi): series and AGM routes") {
  for (const auto& [chi, lit] : {std::pair{c3, oracle::kLogDerivChi3}, std::pair{c4, oracle::kLogDerivChi4}}) {
    const HPReal s = logderiv_series(chi, 50);
    const HPReal a = logderiv_agm(chi, 50);
    CHECK(agree(s, lit) >= 47);
    CHECK(agree(a, lit) >= 47);
    CHECK(agreeing_digits(s, a) >= 47);
  }
}

TEST_CASE("class number formula") {
  const HPReal pi = const_pi(50);
  CHECK(agreeing_digits(class_number_formula(c3, 50), pi / sqrt(HPReal(27L, 50))) >= 48);
  CHECK(agreeing_digits(class_number_formula(c4, 50), pi / 4L) >= 48);
  CHECK(agreeing_digits(class_number_formula(c3, 50), l_value(c3, HPReal(1L, 50), 50)) >= 47);
}

TEST_CASE("partial sums approach L(1) and L'(1)") {
  const HPReal l1 = hp(oracle::kL1Chi4);
  const HPReal p = l_value_partial_sum(c4, 100000, 30);
  CHECK(abs(p - l1) < HPReal(1e-5, 30));
  const HPReal dp = l_prime_partial_sum(c4, 100000, 30);
  // Σ χ(n) log n / n = −L'(1,χ)
  CHECK(abs(dp + hp(oracle::kLPrime1Chi4)) < HPReal(1e-3, 30));
}

TEST_CASE("Euler-Maclaurin: error bound and independence of the cut") {
  const SeriesEvaluation e = dirichlet_series(c3, HPReal(2L, 40), 40);
  CHECK(e.direct_terms > 0);
  CHECK(e.correction_terms > 0);
  CHECK(e.error_bound < ten_to_minus(40, 40));
  const SeriesEvaluation e2 = dirichlet_series(c3, HPReal(2L, 40), 40, e.direct_terms + 17);
  CHECK(agreeing_digits(e.value, e2.value) >= 39);
  CHECK(agreeing_digits(e.derivative, e2.derivative) >= 38);
}

TEST_CASE("property: random s, precision refinement agrees") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> sd(1.0, 8.0);
  for (int i = 0; i < 12; ++i) {
    const double s = sd(rng);
    for (const auto& chi : {c3, c4}) {
      const HPReal lo = l_value(chi, HPReal(s, 60), 30);
      const HPReal hi = l_value(chi, HPReal(s, 60), 55);
      CHECK(agreeing_digits(lo, hi) >= 29);
      // 1 − 2^{−s} ≤ L(s,χ₄) ≤ 1 for s ≥ 1 (alternating, decreasing terms)
      if (chi == c4) {
        CHECK(hi <= HPReal(1L, 55));
        CHECK(hi >= HPReal(1L, 55) - pow(HPReal(3L, 55), -HPReal(s, 55)));
      }
    }
    if (s >= 2) {
      const HPReal z = zeta(HPReal(s, 60), 40);
      const HPReal z2 = zeta(HPReal(s, 60), 55);
      CHECK(agreeing_digits(z, z2) >= 39);
      CHECK(z > HPReal(1L, 40));
    }
  }
}
