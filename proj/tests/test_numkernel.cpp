#include <doctest.h>

#include <mpfr.h>

#include <random>

#include "chebias/numkernel.hpp"
#include "oracles/frozen_oracles.hpp"
#include "support.hpp"

using namespace chebias;

TEST_CASE("HPReal parse and print") {
  CHECK(hp("1.25").to_string(3) == "1.25");
  CHECK(hp("-1.25e-3").to_string(3) == "-0.00125");
  CHECK(hp("12345.5").to_string(6) == "12345.5");
  CHECK(hp("3e-9").to_string(2) == "3.0e-9");
  CHECK(hp("0").to_string(5) == "0");
  CHECK(hp("2.5").to_string(1, Rounding::toward_zero) == "2");
  CHECK_THROWS_AS(HPReal::parse("1.2.3", 20), std::invalid_argument);
  CHECK_THROWS_AS(HPReal::parse("", 20), std::invalid_argument);
}

TEST_CASE("HPReal arithmetic") {
  const HPReal third = HPReal::ratio(1, 3, 40);
  CHECK(agree(third * 3L, "1") >= 39);
  CHECK((HPReal(7L, 20) / 2L).to_double() == 3.5);
  CHECK(HPReal(2L, 20) < HPReal(3L, 20));
  CHECK(-HPReal(2L, 20) == HPReal(-2L, 20));
  CHECK(max(HPReal(2L, 20), HPReal(3L, 20)).to_double() == 3);
  CHECK(min(HPReal(2L, 20), HPReal(3L, 20)).to_double() == 2);
  CHECK(abs(HPReal(-4L, 20)).to_double() == 4);
  CHECK(agree(pow(HPReal(2L, 40), HPReal::ratio(1, 2, 40)), "1.4142135623730950488016887242096980785696718753769") >= 39);
  CHECK(agree(exp(log(HPReal(10L, 40))), "10") >= 38);
  CHECK_THROWS_AS(HPReal(1L, 20) / 0L, std::domain_error);
}

TEST_CASE("mixed precision keeps the value") {
  // the wider operand's precision wins and neither value is lost
  const HPReal narrow(0.5, 15);
  const HPReal wide = HPReal::ratio(1, 3, 60);
  const HPReal s = narrow + wide;
  CHECK(s.digits() == 60);
  CHECK(agree(s, "0.833333333333333333333333333333333333333333333333333333333333333333333") >= 58);
  HPReal t(2L, 15);
  t /= wide;
  CHECK(agree(t, "6") >= 58);
  CHECK(agree(pow(narrow, wide), "0.7937005259840997373758528196361541301957466639499265049041428809126083") >= 58);
}

TEST_CASE("ten_to_minus and agreeing_digits") {
  CHECK(ten_to_minus(5, 20).to_string(3) == "0.0000100");
  CHECK(agreeing_digits(hp("1.0001"), hp("1")) == 4);
  CHECK(agreeing_digits(hp("2"), hp("2")) > 1000);
}

TEST_CASE("pi against mpfr and the frozen oracle") {
  for (int d : {10, 30, 100}) {
    const HPReal pi = const_pi(d);
    HPReal ref(d);
    mpfr_const_pi(ref.get_mutable(), MPFR_RNDN);
    CHECK(agreeing_digits(pi, ref) >= d - 1);
  }
  CHECK(agree(const_pi(50), oracle::kPi) >= 49);
  CHECK_THROWS_AS(const_pi(5), std::domain_error);
}

TEST_CASE("Euler gamma: Bessel route vs mpfr vs Euler-Maclaurin") {
  const HPReal g = const_gamma(50);
  CHECK(agree(g, oracle::kEulerGamma) >= 49);
  HPReal ref(50);
  mpfr_const_euler(ref.get_mutable(), MPFR_RNDN);
  CHECK(agreeing_digits(g, ref) >= 49);

  // H_n − log n − 1/(2n) + Σ B_{2k}/(2k n^{2k}), n = 1000, a handful of terms
  const int wd = 60;
  const long n = 1000;
  HPReal h(wd);
  for (long k = 1; k <= n; ++k) h += HPReal(1L, wd) / k;
  HPReal em = h - log_of(n, wd) - HPReal(1L, wd) / (2 * n);
  const HPReal nn(n, wd);
  for (int k = 1; k <= 6; ++k) {
    const mpq_class& b = bernoulli(2 * k);
    HPReal term = HPReal(b.get_num().get_si(), wd) / b.get_den().get_si();
    term /= static_cast<long>(2 * k);
    term /= pow(nn, static_cast<long>(2 * k));
    em += term;
  }
  CHECK(agreeing_digits(g, em) >= 40);
}

TEST_CASE("AGM") {
  const HPReal m = agm(HPReal(1L, 50), sqrt(HPReal(2L, 50)), 50);
  CHECK(agree(m, oracle::kAgm1Sqrt2) >= 49);
  CHECK(last_agm_iterations() > 3);
  CHECK(last_agm_iterations() < 12);
  // symmetric, homogeneous
  const HPReal a(3L, 40), b(5L, 40);
  CHECK(agreeing_digits(agm(a, b, 40), agm(b, a, 40)) >= 39);
  CHECK(agreeing_digits(agm(a * 2L, b * 2L, 40), agm(a, b, 40) * 2L) >= 39);
  AgmState s{a, b};
  const AgmState t = s.step();
  CHECK(t.iteration == 1);
  CHECK(agree(t.a, "4") >= 39);
  CHECK(agreeing_digits(t.b, sqrt(HPReal(15L, 40))) >= 39);
  CHECK_THROWS(agm(HPReal(-1L, 20), HPReal(1L, 20), 20));
}

TEST_CASE("Gamma fractions, sin(pi/12), lemniscate constant") {
  CHECK(agree(gamma_fraction(GammaArgument::one_third, 50), oracle::kGammaOneThird) >= 48);
  CHECK(agree(gamma_fraction(GammaArgument::three_quarters, 50), oracle::kGammaThreeQuarters) >= 48);
  const HPReal s = sin_pi_over_12(50);
  CHECK(agreeing_digits(s, (sqrt(HPReal(6L, 60)) - sqrt(HPReal(2L, 60))) / 4L) >= 49);
  // Gauss: ϖ = π / M(1, √2)
  const HPReal w = lemniscate_constant(50);
  CHECK(agreeing_digits(w, const_pi(60) / hp(oracle::kAgm1Sqrt2)) >= 48);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(20) == mpq_class(-174611, 330));
}

TEST_CASE("property: random rationals round-trip through arithmetic") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
  for (int i = 0; i < 200; ++i) {
    const long p = num(rng), q = den(rng), r = den(rng);
    const HPReal x = HPReal::ratio(p, q, 40);
    const HPReal y = HPReal::ratio(r, q, 40);
    const HPReal back = (x + y) - y;
    CHECK(abs(back - x) <= ten_to_minus(36, 40) * (abs(x) + HPReal(1L, 40)));
    CHECK(agreeing_digits(x * y / y, x) >= 37);
  }
}
