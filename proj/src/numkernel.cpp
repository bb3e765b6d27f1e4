#include "chebias/numkernel.hpp"

#include <cmath>
#include <stdexcept>

namespace chebias {

namespace {

thread_local int t_last_agm_iterations = 0;

void require_digits(int digits, const char* what) {
  if (digits < kMinDigits) {
    throw std::domain_error(std::string(what) + ": precision below " + std::to_string(kMinDigits) + " digits");
  }
}

// arctan(1/m) = Σ (−1)^k / ((2k+1) m^{2k+1})
HPReal arctan_inverse(long m, int digits) {
  const HPReal eps = ten_to_minus(digits + 2, digits);
  HPReal power = HPReal(1L, digits) / HPReal(m, digits);
  const long m2 = m * m;
  HPReal sum(digits);
  for (long k = 0;; ++k) {
    HPReal term = power / (2 * k + 1);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (power < eps) break;
    power /= m2;
  }
  return sum;
}

}  // namespace

HPReal const_pi(int digits) {
  require_digits(digits, "const_pi");
  const int wd = digits + 10;
  HPReal pi = arctan_inverse(5, wd) * 16L - arctan_inverse(239, wd) * 4L;
  return pi.with_digits(digits);
}

HPReal const_gamma(int digits) {
  require_digits(digits, "const_gamma");
  // Truncation error of the Bessel ratio is about π·e^{−4n}.
  const long n = static_cast<long>(std::ceil((digits + 6) * std::log(10.0) / 4.0)) + 1;
  const int wd = digits + 20;
  const HPReal eps = ten_to_minus(wd, wd);
  const long n2 = n * n;

  HPReal a = -log_of(n, wd);
  HPReal b(1L, wd);
  HPReal u = a;
  HPReal v = b;
  for (long k = 1;; ++k) {
    b *= n2;
    b /= k * k;
    a *= n2;
    a /= k;
    a += b;
    a /= k;
    u += a;
    v += b;
    if (k > n && b < v * eps && abs(a) < abs(u) * eps) break;
  }
  return (u / v).with_digits(digits);
}

AgmState AgmState::step() const {
  AgmState next{(a + b) / 2L, sqrt(a * b), iteration + 1};
  return next;
}

HPReal agm(const HPReal& a, const HPReal& b, int digits) {
  if (a.sign() <= 0 || b.sign() <= 0) throw std::domain_error("agm: arguments must be positive");
  const int wd = digits + 10;
  const HPReal eps = ten_to_minus(wd, wd);
  AgmState state{a.with_digits(wd), b.with_digits(wd), 0};
  while (abs(state.a - state.b) > abs(state.a) * eps) {
    state = state.step();
  }
  t_last_agm_iterations = state.iteration;
  return ((state.a + state.b) / 2L).with_digits(digits);
}

int last_agm_iterations() { return t_last_agm_iterations; }

HPReal sin_pi_over_12(int digits) {
  const int wd = digits + 10;
  HPReal three(3L, wd);
  HPReal eight(8L, wd);
  return ((sqrt(three) - HPReal(1L, wd)) / sqrt(eight)).with_digits(digits);
}

HPReal gamma_fraction(GammaArgument which, int digits) {
  require_digits(digits, "gamma_fraction");
  const int wd = digits + 10;
  const HPReal one(1L, wd);
  const HPReal pi = const_pi(wd);
  switch (which) {
    case GammaArgument::three_quarters: {
      // M(1,√2) = √(2/π) Γ(3/4)²
      const HPReal m = agm(one, sqrt(HPReal(2L, wd)), wd);
      return sqrt(m * sqrt(pi / 2L)).with_digits(digits);
    }
    case GammaArgument::one_third: {
      // M(1+z,1−z) = 2^{4/3} π² / (3^{1/4} Γ(1/3)³)
      const HPReal z = sin_pi_over_12(wd);
      const HPReal m = agm(one + z, one - z, wd);
      const HPReal two_4_3 = pow(HPReal(2L, wd), HPReal::ratio(4, 3, wd));
      const HPReal three_1_4 = pow(HPReal(3L, wd), HPReal::ratio(1, 4, wd));
      return cbrt(two_4_3 * pi * pi / (three_1_4 * m)).with_digits(digits);
    }
  }
  throw std::invalid_argument("gamma_fraction: unsupported argument");
}

HPReal lemniscate_constant(int digits) {
  const int wd = digits + 10;
  const HPReal m = agm(HPReal(1L, wd), sqrt(HPReal(2L, wd)), wd);
  return (const_pi(wd) / m).with_digits(digits);
}

}  // namespace chebias
