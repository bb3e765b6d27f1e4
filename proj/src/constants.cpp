#include "chebias/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "chebias/kernels.hpp"
#include "chebias/lfunc.hpp"
#include "chebias/numkernel.hpp"

namespace chebias {

const char* method_name(Method m) {
  switch (m) {
    case Method::lacunary: return "lacunary";
    case Method::closed_form: return "closed_form";
    case Method::agm: return "agm";
    case Method::series: return "series";
  }
  return "?";
}

namespace {

constexpr int kGuard = 10;

int certified(int digits) { return digits - 5; }

ConstantResult finish(std::string name, const HPReal& v, int digits, Method m) {
  return {std::move(name), v.with_digits(digits), certified(digits), m};
}

// ∏_{n≥1} R(2ⁿ)^{1/2^{n+1}}, R(t) = L(t,χ)/(ζ(t)(1 − q^{−t})), q = the modulus prime.
HPReal lacunary_product(const DirichletCharacter& chi, int wd) {
  const long q = chi.modulus() == 3 ? 3 : 2;
  const HPReal one(1L, wd);
  const HPReal stop = ten_to_minus(wd + 5, wd);
  HPReal log_prod(wd);
  long t = 2;
  for (int n = 1; n < 40; ++n, t *= 2) {
    const HPReal s(t, wd);
    const HPReal z = zeta(s, wd);
    const HPReal l = l_value(chi, s, wd);
    const HPReal r = l / (z * (one - pow(HPReal(q, wd), -s)));
    const HPReal term = log(r) / (2 * t);  // 2^{n+1} = 2t
    log_prod += term;
    if (abs(term) < stop) break;
  }
  return exp(log_prod);
}

HPReal c31(int wd) {
  const HPReal two(2L, wd), three(3L, wd);
  return sqrt(two) / pow(three, HPReal::ratio(5, 4, wd)) * lacunary_product(DirichletCharacter::chi3(), wd);
}

HPReal c41(int wd) {
  return lacunary_product(DirichletCharacter::chi4(), wd) / (sqrt(HPReal(2L, wd)) * 2L);
}

HPReal landau_ramanujan(int wd) {
  return HPReal(1L, wd) / (sqrt(HPReal(2L, wd)) * lacunary_product(DirichletCharacter::chi4(), wd));
}

// Σ_{p≡a} log p/(p^E − 1) over p < 1000, and a bound for p ≥ 1000.
constexpr std::uint32_t kTailPrimes = 1000;

HPReal prime_tail(int d, int a, long exponent, int wd) {
  HPReal sum(wd);
  for (const std::uint32_t p : kernels::small_primes(kTailPrimes - 1)) {
    if (static_cast<int>(p % static_cast<std::uint32_t>(d)) != a) continue;
    const HPReal pe = pow(HPReal(static_cast<long>(p), wd), exponent);
    sum += log_of(p, wd) / (pe - HPReal(1L, wd));
  }
  return sum;
}

// log10 of Σ_{n≥1000} 2 log n / n^E.
double tail_log10(long exponent) {
  const double p = kTailPrimes;
  return std::log10(2.0 * std::log(p) * p / (static_cast<double>(exponent) - 1.0)) -
         static_cast<double>(exponent) * std::log10(p);
}

HPReal prime_sum_value(int d, int a, int wd) {
  if (!((d == 3 && a == 2) || (d == 4 && a == 3))) {
    throw std::invalid_argument("prime_sum: (d, a) must be (3, 2) or (4, 3)");
  }
  const DirichletCharacter chi = d == 3 ? DirichletCharacter::chi3() : DirichletCharacter::chi4();
  const long q = d == 3 ? 3 : 2;
  int m = 1;
  while (tail_log10(2L << m) > -(wd + 5)) ++m;  // tail exponent 2^{m+1}
  const HPReal one(1L, wd);
  HPReal sum(wd);
  long t = 2;
  for (int n = 1; n <= m; ++n, t *= 2) {
    const HPReal s(t, wd);
    const SeriesEvaluation l = dirichlet_series(chi, s, wd);
    const SeriesEvaluation z = dirichlet_series(DirichletCharacter::trivial(), s, wd);
    const HPReal q_term = log_of(q, wd) / (pow(HPReal(q, wd), t) - one);
    sum += (l.derivative / l.value - z.derivative / z.value - q_term) / 2L;
  }
  return sum + prime_tail(d, a, 2L << m, wd);
}

HPReal b_value(const SemigroupSpec& spec, int wd) {
  const HPReal gamma = const_gamma(wd);
  const HPReal log2 = log_of(2, wd);
  const HPReal log3 = log_of(3, wd);
  switch (spec.kind) {
    case SemigroupKind::all_integers: return -gamma;
    case SemigroupKind::sum_of_two_squares: {
      const HPReal s4 = prime_sum_value(4, 3, wd);
      const HPReal b41 = (-gamma - logderiv_agm(DirichletCharacter::chi4(), wd) - log2 - s4 * 2L) / 2L;
      return b41 + log2 + s4 * 2L;
    }
    case SemigroupKind::residue_class: break;
  }
  if (spec.d == 3) {
    const HPReal s3 = prime_sum_value(3, 2, wd);
    const HPReal b31 = (-gamma - logderiv_agm(DirichletCharacter::chi3(), wd) - log3 / 2L - s3 * 2L) / 2L;
    return spec.a == 1 ? b31 : -gamma - log3 / 2L - b31;
  }
  const HPReal s4 = prime_sum_value(4, 3, wd);
  const HPReal b41 = (-gamma - logderiv_agm(DirichletCharacter::chi4(), wd) - log2 - s4 * 2L) / 2L;
  return spec.a == 1 ? b41 : -log2 - gamma - b41;
}

std::string spec_suffix(const SemigroupSpec& spec) {
  return spec.kind == SemigroupKind::residue_class ? "g_" + std::to_string(spec.d) + "_" + std::to_string(spec.a)
                                                   : spec.name();
}

// Memo of computed constants keyed by (name, digits).
std::shared_mutex g_cache_mutex;
std::map<std::pair<std::string, int>, ConstantResult> g_cache;

template <class F>
ConstantResult memoized(const std::string& name, int digits, F compute) {
  const auto key = std::make_pair(name, digits);
  {
    std::shared_lock lock(g_cache_mutex);
    const auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  ConstantResult r = compute();
  std::unique_lock lock(g_cache_mutex);
  return g_cache.emplace(key, std::move(r)).first->second;
}

void require_digits(int digits) {
  if (digits < kMinDigits) throw std::domain_error("constants: precision below 10 digits");
}

}  // namespace

ConstantResult c_constant(const SemigroupSpec& spec, int digits) {
  require_digits(digits);
  const int wd = digits + kGuard;
  if (spec.kind == SemigroupKind::sum_of_two_squares) {
    return memoized("K", digits, [&] { return finish("K", landau_ramanujan(wd), digits, Method::lacunary); });
  }
  if (spec.kind != SemigroupKind::residue_class) {
    throw std::invalid_argument("c_constant: no C constant for '" + spec.name() + "'");
  }
  const std::string name = "C_" + std::to_string(spec.d) + "_" + std::to_string(spec.a);
  return memoized(name, digits, [&] {
    const HPReal pi = const_pi(wd);
    if (spec.d == 3) {
      if (spec.a == 1) return finish(name, c31(wd), digits, Method::lacunary);
      return finish(name, HPReal(2L, wd) / (pi * 3L * c31(wd)), digits, Method::closed_form);
    }
    if (spec.a == 1) return finish(name, c41(wd), digits, Method::lacunary);
    return finish(name, HPReal(1L, wd) / (pi * 2L * c41(wd)), digits, Method::closed_form);
  });
}

ConstantResult prime_sum(int d, int a, int digits) {
  require_digits(digits);
  const std::string name = "S_" + std::to_string(d) + "_" + std::to_string(a);
  return memoized(name, digits,
                  [&] { return finish(name, prime_sum_value(d, a, digits + kGuard), digits, Method::series); });
}

PartialPrimeSum prime_sum_partial(const SieveTables& tables, int d, int a, std::uint64_t x_to, int digits) {
  if (x_to > tables.x_max()) throw std::out_of_range("prime_sum_partial: x_to beyond sieve limit");
  const int wd = digits + 5;
  const HPReal one(1L, wd);
  HPReal sum(wd);
  for (const std::uint32_t p : tables.primes_in_class(d, a)) {
    if (p > x_to) break;
    const HPReal hp(static_cast<long>(p), wd);
    sum += log_of(p, wd) / (hp * hp - one);
  }
  // Σ_{p>X} log p/(p²−1) ≤ (1 + 1/(X²−1)) ∫_X^∞ dθ(t)/t² ≤ (1 + 1/(X²−1)) · 2·1.01624/X
  const HPReal x(static_cast<long>(x_to), wd);
  const HPReal bound = (one + one / (x * x - one)) * HPReal::parse("2.03248", wd) / x;
  return {sum.with_digits(digits), bound.with_digits(digits)};
}

ConstantResult b_constant(const SemigroupSpec& spec, int digits) {
  require_digits(digits);
  const std::string name = "B_" + spec_suffix(spec);
  return memoized(name, digits,
                  [&] { return finish(name, b_value(spec, digits + kGuard), digits, Method::closed_form); });
}

ConstantResult second_order(const SemigroupSpec& spec, int digits) {
  require_digits(digits);
  const std::string name = "lambda2_" + spec_suffix(spec);
  return memoized(name, digits, [&] {
    const int wd = digits + kGuard;
    const HPReal one(1L, wd);
    const HPReal v = (one - spec.tau(wd)) * (one + b_value(spec, wd));
    return finish(name, v, digits, Method::closed_form);
  });
}

ConstantResult k2_closed_form(int digits) {
  require_digits(digits);
  return memoized("K_2", digits, [&] {
    const int wd = digits + kGuard;
    const HPReal v = HPReal::ratio(1, 2, wd) - const_gamma(wd) / 4L -
                     logderiv_agm(DirichletCharacter::chi4(), wd) / 4L + log_of(2, wd) / 4L +
                     prime_sum_value(4, 3, wd) / 2L;
    return finish("K_2", v, digits, Method::closed_form);
  });
}

HPReal k2_series_partial(const SummatorySeries& b1, double x, int digits) {
  if (b1.spec().kind != SemigroupKind::sum_of_two_squares) {
    throw std::invalid_argument("k2_series_partial: expects the b1 series");
  }
  if (x < 1) throw std::domain_error("k2_series_partial: x < 1");
  const int wd = digits + 5;
  const HPReal one(1L, wd);
  const HPReal v = (one + b1.lambda_over_n(x, wd) - log(HPReal(x, wd)) / 2L) / 2L;
  return v.with_digits(digits);
}

std::vector<std::string> constant_names() {
  return {"pi",      "gamma",      "C_3_1",      "C_3_2",      "C_4_1",      "C_4_3",      "K",
          "K_2",     "S_3_2",      "S_4_3",      "B_g_3_1",    "B_g_3_2",    "B_g_4_1",    "B_g_4_3",
          "B_b1",    "lambda2_g_3_1", "lambda2_g_3_2", "lambda2_g_4_1", "lambda2_g_4_3", "lambda2_b1",
          "LdL_chi3", "LdL_chi4",   "L1_chi3",    "L1_chi4"};
}

ConstantResult constant_by_name(const std::string& name, int digits) {
  require_digits(digits);
  if (name == "pi") return memoized(name, digits, [&] { return finish(name, const_pi(digits + 5), digits, Method::series); });
  if (name == "gamma") {
    return memoized(name, digits, [&] { return finish(name, const_gamma(digits + 5), digits, Method::series); });
  }
  if (name == "K") return c_constant(SemigroupSpec::sum_of_two_squares(), digits);
  if (name == "K_2") return k2_closed_form(digits);
  if (name.rfind("C_", 0) == 0) return c_constant(SemigroupSpec::parse("g" + name.substr(1)), digits);
  if (name == "S_3_2") return prime_sum(3, 2, digits);
  if (name == "S_4_3") return prime_sum(4, 3, digits);
  if (name.rfind("B_", 0) == 0) return b_constant(SemigroupSpec::parse(name.substr(2)), digits);
  if (name.rfind("lambda2_", 0) == 0) return second_order(SemigroupSpec::parse(name.substr(8)), digits);
  if (name == "LdL_chi3" || name == "LdL_chi4") {
    return memoized(name, digits, [&] {
      const auto chi = name == "LdL_chi3" ? DirichletCharacter::chi3() : DirichletCharacter::chi4();
      return finish(name, logderiv_agm(chi, digits + 5), digits, Method::agm);
    });
  }
  if (name == "L1_chi3" || name == "L1_chi4") {
    return memoized(name, digits, [&] {
      const auto chi = name == "L1_chi3" ? DirichletCharacter::chi3() : DirichletCharacter::chi4();
      return finish(name, l_value(chi, HPReal(1L, digits + 5), digits + 5), digits, Method::series);
    });
  }
  throw std::invalid_argument("unknown constant '" + name + "'");
}

}  // namespace chebias
