#pragma once

// Named constants: C_{d,a}, K, the prime sums Σ log p/(p²−1), B_f, λ₂(f), K₂.

#include <string>
#include <vector>

#include "chebias/hpreal.hpp"
#include "chebias/multfun.hpp"

namespace chebias {

enum class Method { lacunary, closed_form, agm, series };
const char* method_name(Method m);

struct ConstantResult {
  std::string name;
  HPReal value;
  int certified_digits = 0;
  Method method = Method::closed_form;
};

/// C_{d,a} for g_{d,a}, or K for b₁. C_{3,1}, C_{4,1}, K by lacunary products
/// over L(2ⁿ,χ)/ζ(2ⁿ); C_{3,2} = 2/(3π C_{3,1}), C_{4,3} = 1/(2π C_{4,1}).
ConstantResult c_constant(const SemigroupSpec& spec, int digits = kDefaultDigits);

/// Σ_{p≡a mod d} log p/(p²−1) for (d,a) ∈ {(3,2),(4,3)}, by the telescoped
/// logarithmic-derivative identity plus an explicit prime tail.
ConstantResult prime_sum(int d, int a, int digits = kDefaultDigits);

struct PartialPrimeSum {
  HPReal value;
  HPReal tail_bound;  // Σ over p > x_to, using θ(t) < 1.01624 t
};
/// Direct Σ_{p≤x_to, p≡a mod d} log p/(p²−1) over sieved primes.
PartialPrimeSum prime_sum_partial(const SieveTables& tables, int d, int a, std::uint64_t x_to, int digits);

/// B_f in Σ_{n≤x} Λ_f(n)/n = τ log x + B_f + o(1), for g_{d,a}, b₁ and f = 1.
ConstantResult b_constant(const SemigroupSpec& spec, int digits = kDefaultDigits);

/// λ₂(f) = (1−τ)(1+B_f).
ConstantResult second_order(const SemigroupSpec& spec, int digits = kDefaultDigits);

/// K₂ = 1/2 − γ/4 − L'/L(1,χ₄)/4 + log 2/4 + (1/2) Σ_{p≡3(4)} log p/(p²−1).
ConstantResult k2_closed_form(int digits = kDefaultDigits);

/// (1/2)(1 + Σ_{n≤x} Λ_{b₁}(n)/n − (1/2) log x); `b1` must be the b₁ series.
HPReal k2_series_partial(const SummatorySeries& b1, double x, int digits = kDefaultDigits);

/// Lookup by name ("C_3_1", "K", "K_2", "S_3_2", "B_g_4_1", "lambda2_b1", ...),
/// memoized per (name, digits). Throws std::invalid_argument for unknown names.
ConstantResult constant_by_name(const std::string& name, int digits = kDefaultDigits);
std::vector<std::string> constant_names();

}  // namespace chebias
