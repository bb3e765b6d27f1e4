#pragma once

// ζ(s), L(s,χ₃), L(s,χ₄) and their s-derivatives at real s.

#include <array>
#include <cstdint>
#include <vector>

#include "chebias/hpreal.hpp"

namespace chebias {

/// Real Dirichlet character of modulus 3 or 4, or the trivial character
/// (modulus 1) which turns the residue engine into ζ.
class DirichletCharacter {
 public:
  static DirichletCharacter chi3();
  static DirichletCharacter chi4();
  static DirichletCharacter trivial();

  int modulus() const { return modulus_; }
  int operator()(std::int64_t n) const;
  /// Smallest m > 1 with χ(m) ≠ 0.
  int first_nonzero_above_one() const;
  const char* name() const;

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  DirichletCharacter(int modulus, std::vector<int> values) : modulus_(modulus), values_(std::move(values)) {}

  int modulus_;
  std::vector<int> values_;  // values_[n mod modulus]
};

/// Value, s-derivative and the truncation bound of a residue-class
/// Euler–Maclaurin evaluation of Σ χ(n) n^{−s}.
struct SeriesEvaluation {
  HPReal value;
  HPReal derivative;
  HPReal error_bound;
  int direct_terms = 0;     // M: terms m < M summed per residue class
  int correction_terms = 0; // Bernoulli correction terms used
};

/// Σ χ(n) n^{−s} by Euler–Maclaurin on each residue class; s ≥ 1, and s = 1 only
/// for non-principal χ. `direct_terms` = 0 picks M from the digit budget.
SeriesEvaluation dirichlet_series(const DirichletCharacter& chi, const HPReal& s, int digits, int direct_terms = 0);

/// ζ(s) for s ≥ 2 (π²/6 returned directly at s = 2). Throws std::domain_error for s < 2.
HPReal zeta(const HPReal& s, int digits);
HPReal zeta_prime(const HPReal& s, int digits);

/// L(s,χ), L'(s,χ) for χ ∈ {χ₃, χ₄}, s ≥ 1.
HPReal l_value(const DirichletCharacter& chi, const HPReal& s, int digits);
HPReal l_prime(const DirichletCharacter& chi, const HPReal& s, int digits);

/// Σ_{n≤N} χ(n)/n and Σ_{n≤N} χ(n) log n / n (the alternating partial sums).
HPReal l_value_partial_sum(const DirichletCharacter& chi, std::int64_t n_max, int digits);
HPReal l_prime_partial_sum(const DirichletCharacter& chi, std::int64_t n_max, int digits);

/// L'/L(1,χ) from the AGM identities:
///   χ₄: log(M(1,√2)² e^γ / 2),  χ₃: log(2^{4/3} M(1+z,1−z)² e^γ / 3), z = sin(π/12).
HPReal logderiv_agm(const DirichletCharacter& chi, int digits);

/// L'/L(1,χ) from the series route (l_prime / l_value).
HPReal logderiv_series(const DirichletCharacter& chi, int digits);

/// Class number formula −(π/k^{3/2}) Σ_{n≤k} n χ(n) for real odd χ.
HPReal class_number_formula(const DirichletCharacter& chi, int digits);

}  // namespace chebias
