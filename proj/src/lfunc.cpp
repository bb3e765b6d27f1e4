#include "chebias/lfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "chebias/numkernel.hpp"

namespace chebias {

DirichletCharacter DirichletCharacter::chi3() { return {3, {0, 1, -1}}; }
DirichletCharacter DirichletCharacter::chi4() { return {4, {0, 1, 0, -1}}; }
DirichletCharacter DirichletCharacter::trivial() { return {1, {1}}; }

int DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t r = ((n % modulus_) + modulus_) % modulus_;
  return values_[static_cast<size_t>(r)];
}

int DirichletCharacter::first_nonzero_above_one() const {
  for (int m = 2;; ++m) {
    if ((*this)(m) != 0) return m;
  }
}

const char* DirichletCharacter::name() const {
  switch (modulus_) {
    case 3: return "chi_3";
    case 4: return "chi_4";
    default: return "trivial";
  }
}

namespace {

HPReal from_rational(const mpq_class& q, int digits) {
  HPReal r(digits);
  mpfr_set_q(r.get_mutable(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

void require_real_character(const DirichletCharacter& chi) {
  if (chi.modulus() != 3 && chi.modulus() != 4) {
    throw std::invalid_argument("only the real characters mod 3 and mod 4 are supported");
  }
}

struct ResidueTail {
  long weight;
  HPReal u;      // d·M + a
  HPReal log_u;
  HPReal power;  // u^{−s−2k+1}, advanced per correction term
};

}  // namespace

SeriesEvaluation dirichlet_series(const DirichletCharacter& chi, const HPReal& s_in, int digits, int direct_terms) {
  const int wd = digits + 15;
  const HPReal s = s_in.with_digits(wd);
  const HPReal one(1L, wd);
  const bool at_one = (s == one);
  if (s < one) throw std::domain_error("dirichlet_series: s < 1");
  const long d = chi.modulus();
  if (at_one && d == 1) throw std::domain_error("dirichlet_series: pole of zeta at s = 1");

  const int m_terms = direct_terms > 0 ? direct_terms : (digits + 8) / 2 + 10;

  HPReal value(wd);
  HPReal deriv(wd);
  std::vector<ResidueTail> tails;
  const HPReal s_minus_1 = s - one;
  for (long a = 1; a <= d; ++a) {
    const long w = chi(a);
    if (w == 0) continue;
    for (long m = 0; m < m_terms; ++m) {
      const long n = d * m + a;
      const HPReal t = pow(HPReal(n, wd), -s);
      const HPReal lt = log_of(n, wd) * t;
      value += t * w;
      deriv -= lt * w;
    }
    HPReal u(d * m_terms + a, wd);
    HPReal log_u = log(u);
    const HPReal u_s = pow(u, -s);
    value += u_s * w / 2L;
    deriv -= log_u * u_s * w / 2L;
    if (!at_one) {
      const HPReal u_1s = pow(u, one - s);
      value += u_1s * w / (s_minus_1 * d);
      deriv -= u_1s * w / d * (log_u / s_minus_1 + one / (s_minus_1 * s_minus_1));
    } else {
      // χ-weighted limit of u^{1−s}/(d(s−1)) at s = 1 (the 1/(s−1) parts cancel).
      value -= log_u * w / d;
      deriv += log_u * log_u * w / (2 * d);
    }
    // u^{−s−1} for k = 1
    HPReal power = u_s / u;
    tails.push_back({w, std::move(u), std::move(log_u), std::move(power)});
  }

  // Σ_k B_{2k}/(2k)! · (s)_{2k−1} · d^{2k−1} · u^{−s−2k+1}
  const HPReal tol = ten_to_minus(digits + 8, wd);
  HPReal poch = s;          // (s)_1
  HPReal poch_log = one / s;  // d/ds log (s)_1
  HPReal d_power(d, wd);    // d^1
  mpz_class factorial = 2;  // (2k)!
  HPReal prev_mag(wd);
  HPReal bound(wd);
  int k_used = 0;
  for (int k = 1;; ++k) {
    if (k > 1) {
      const HPReal p1 = s + HPReal(static_cast<long>(2 * k - 3), wd);
      const HPReal p2 = s + HPReal(static_cast<long>(2 * k - 2), wd);
      poch *= p1 * p2;
      poch_log += one / p1 + one / p2;
      d_power *= d * d;
      factorial *= (2 * k - 1) * (2 * k);
      for (auto& t : tails) t.power /= t.u * t.u;
    }
    const HPReal coeff = from_rational(bernoulli(2 * k) / mpq_class(factorial), wd) * poch * d_power;
    HPReal term(wd), dterm(wd), mag(wd), dmag(wd);
    for (const auto& t : tails) {
      const HPReal ta = coeff * t.power;
      const HPReal da = ta * (poch_log - t.log_u);
      term += ta * t.weight;
      dterm += da * t.weight;
      mag += abs(ta);
      dmag += abs(da);
    }
    if (k > 2 && mag > prev_mag) {
      throw std::runtime_error("dirichlet_series: Euler–Maclaurin tail diverged before reaching precision");
    }
    value += term;
    deriv += dterm;
    k_used = k;
    prev_mag = mag;
    const bool value_done = mag <= tol * abs(value);
    const bool deriv_done = dmag <= tol * abs(deriv);
    if (value_done && deriv_done) {
      bound = max(mag, dmag);
      break;
    }
  }

  return {value.with_digits(digits), deriv.with_digits(digits), bound.with_digits(digits), m_terms, k_used};
}

HPReal zeta(const HPReal& s, int digits) {
  if (s < HPReal(2L, s.digits())) throw std::domain_error("zeta: s < 2");
  if (s == HPReal(2L, s.digits())) {
    const HPReal pi = const_pi(digits + 5);
    return (pi * pi / 6L).with_digits(digits);
  }
  return dirichlet_series(DirichletCharacter::trivial(), s, digits).value;
}

HPReal zeta_prime(const HPReal& s, int digits) {
  if (s < HPReal(2L, s.digits())) throw std::domain_error("zeta_prime: s < 2");
  return dirichlet_series(DirichletCharacter::trivial(), s, digits).derivative;
}

HPReal l_value(const DirichletCharacter& chi, const HPReal& s, int digits) {
  require_real_character(chi);
  return dirichlet_series(chi, s, digits).value;
}

HPReal l_prime(const DirichletCharacter& chi, const HPReal& s, int digits) {
  require_real_character(chi);
  return dirichlet_series(chi, s, digits).derivative;
}

HPReal l_value_partial_sum(const DirichletCharacter& chi, std::int64_t n_max, int digits) {
  HPReal sum(digits);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const int c = chi(n);
    if (c != 0) sum += HPReal(static_cast<long>(c), digits) / HPReal(static_cast<long>(n), digits);
  }
  return sum;
}

HPReal l_prime_partial_sum(const DirichletCharacter& chi, std::int64_t n_max, int digits) {
  HPReal sum(digits);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const int c = chi(n);
    if (c != 0) sum += log_of(n, digits) * static_cast<long>(c) / static_cast<long>(n);
  }
  return sum;
}

HPReal logderiv_agm(const DirichletCharacter& chi, int digits) {
  require_real_character(chi);
  const int wd = digits + 10;
  const HPReal one(1L, wd);
  const HPReal e_gamma = exp(const_gamma(wd));
  if (chi.modulus() == 4) {
    const HPReal m = agm(one, sqrt(HPReal(2L, wd)), wd);
    return log(m * m * e_gamma / 2L).with_digits(digits);
  }
  const HPReal z = sin_pi_over_12(wd);
  const HPReal m = agm(one + z, one - z, wd);
  const HPReal two_4_3 = pow(HPReal(2L, wd), HPReal::ratio(4, 3, wd));
  return log(two_4_3 * m * m * e_gamma / 3L).with_digits(digits);
}

HPReal logderiv_series(const DirichletCharacter& chi, int digits) {
  require_real_character(chi);
  const SeriesEvaluation e = dirichlet_series(chi, HPReal(1L, digits + 5), digits + 5);
  return (e.derivative / e.value).with_digits(digits);
}

HPReal class_number_formula(const DirichletCharacter& chi, int digits) {
  require_real_character(chi);
  const long k = chi.modulus();
  long weighted = 0;
  for (long n = 1; n <= k; ++n) weighted += n * chi(n);
  const int wd = digits + 5;
  const HPReal k_32 = pow(HPReal(k, wd), HPReal::ratio(3, 2, wd));
  return (-const_pi(wd) * weighted / k_32).with_digits(digits);
}

}  // namespace chebias
