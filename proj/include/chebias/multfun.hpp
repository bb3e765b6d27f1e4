#pragma once

// Characteristic functions of multiplicative semigroups and their summatory
// functions: Λ_f, ψ_f, μ_f, λ_f, M_f.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "chebias/hpreal.hpp"
#include "chebias/sieve.hpp"

namespace chebias {

enum class SemigroupKind { all_integers, residue_class, sum_of_two_squares };

/// f = 1 (all integers), g_{d,a} (every prime factor ≡ a mod d) or b₁
/// (sums of two squares).
struct SemigroupSpec {
  SemigroupKind kind = SemigroupKind::all_integers;
  int d = 1;
  int a = 0;

  static SemigroupSpec all_integers();
  static SemigroupSpec residue_class(int d, int a);  // throws unless gcd(a,d)=1, d ∈ {3,4}
  static SemigroupSpec sum_of_two_squares();
  /// "g_3_1", "g3,1", "b1", "one".
  static SemigroupSpec parse(const std::string& name);

  std::string name() const;
  /// Density at primes as num/den.
  int tau_num() const { return 1; }
  int tau_den() const;
  HPReal tau(int digits) const { return HPReal::ratio(tau_num(), tau_den(), digits); }

  /// Generator q with p^r a power of q (so Λ_f(p^r) = log q), or 0.
  std::uint64_t generator(std::uint64_t p, int r) const;
  /// Whether p^e may occur exactly in a member.
  bool allows(std::uint64_t p, int e) const;

  friend bool operator==(const SemigroupSpec&, const SemigroupSpec&) = default;
};

/// f(n) and Λ_f(n) by trial division (no tables needed).
bool member(std::uint64_t n, const SemigroupSpec& spec);
HPReal lambda_f(std::uint64_t n, const SemigroupSpec& spec, int digits);
/// The q with Λ_f(n) = log q, or 1 when Λ_f(n) = 0.
std::uint64_t lambda_base(std::uint64_t n, const SemigroupSpec& spec);

/// Summatory functions of f over [1, x_max], backed by shared sieve tables.
/// Real arguments truncate at floor(x). Exact queries return HPReal; the
/// *_approx accessors read double prefix arrays (Kahan-summed, built lazily).
class SummatorySeries {
 public:
  SummatorySeries(std::shared_ptr<const SieveTables> tables, SemigroupSpec spec);

  const SemigroupSpec& spec() const { return spec_; }
  std::uint64_t x_max() const { return tables_->x_max(); }
  const SieveTables& tables() const { return *tables_; }
  std::shared_ptr<const SieveTables> tables_ptr() const { return tables_; }

  bool member(std::uint64_t n) const;
  /// q with Λ_f(n) = log q, or 1.
  std::uint64_t lambda_base(std::uint64_t n) const;
  /// Ascending n ≤ x with Λ_f(n) ≠ 0, paired with their base q.
  struct Support {
    std::vector<std::uint64_t> n;
    std::vector<std::uint64_t> q;
  };
  const Support& lambda_support() const;

  std::uint64_t m_f(double x) const;
  HPReal psi_f(double x, int digits) const;
  HPReal mu_f(double x, int digits) const;
  HPReal lambda_sum(double x, int digits) const;
  /// Σ_{n≤x} Λ_f(n)/n.
  HPReal lambda_over_n(double x, int digits) const;

  double psi_approx(std::uint64_t n) const;
  double mu_approx(std::uint64_t n) const;
  double lambda_approx(std::uint64_t n) const;
  double lambda_over_n_approx(std::uint64_t n) const;

  /// Exact λ_f(x) = Σ_p e_p log p: the exponent vector (p, e_p).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> lambda_exponents(std::uint64_t x) const;

 private:
  std::uint64_t clamp(double x, const char* what) const;

  std::shared_ptr<const SieveTables> tables_;
  SemigroupSpec spec_;
  RankBits member_;
  Support support_;

  struct Prefix {
    std::once_flag once;
    std::vector<double> values;
  };
  enum PrefixKind { kPsi, kMu, kLambda, kLambdaOverN, kPrefixKinds };
  const std::vector<double>& prefix(PrefixKind kind) const;
  mutable Prefix prefix_[kPrefixKinds];
};

/// Σ_{p} c_p log p at `digits`, for an exponent vector.
HPReal log_combination(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& terms, int digits);

/// max_{n≤x} |f(n) log n − Σ_{d|n} f(d) Λ_f(n/d)|.
HPReal convolution_residual(const SummatorySeries& s, std::uint64_t x_check, int digits);
/// max_{x≤x_check} |λ_f(x) − Σ_{n≤x} f(n) ψ_f(x/n)| over integers x.
HPReal lambda_from_psi_residual(const SummatorySeries& s, std::uint64_t x_check, int digits);
/// max_{2≤x≤x_check} |M_f(x) − λ_f(x)/log x − ∫_2^x λ_f(t)/(t log²t) dt − 1|,
/// the integral taken exactly on the steps of λ_f.
HPReal m_from_lambda_residual(const SummatorySeries& s, std::uint64_t x_check, int digits);

/// ∫_a^b F(t)/(t log² t) dt for a step function F constant on [n, n+1) with
/// values F(n) = values[n]; 2 ≤ a ≤ b.
HPReal step_integral_t_log2(const std::vector<HPReal>& values, double a, double b, int digits);

enum class GridFormat { csv, json };
/// Rows (x, ψ_f, μ_f, λ_f, M_f) at the given sample points.
void export_grid(const SummatorySeries& s, const std::vector<double>& xs, int digits, GridFormat format,
                 std::ostream& out);

}  // namespace chebias
