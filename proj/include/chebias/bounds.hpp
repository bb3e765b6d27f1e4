#pragma once

// Effective-bound machinery: step-function extremum scans, Λ-drift extrema,
// the μ_f sandwich, the GRH envelope, ψ linear bounds, the propagation
// certificate and squarefree remainder scans.

#include <functional>
#include <string>
#include <vector>

#include "chebias/hpreal.hpp"
#include "chebias/kernels.hpp"
#include "chebias/multfun.hpp"
#include "chebias/verdict.hpp"

namespace chebias {

/// F(x) − r(x) over [y0, y1] for a step function F. Two sup conventions are
/// kept: over all x_i including y0, and over the change points x_i > y0 only.
/// inf is approached as x ↑ x_{i+1}: inf_value = F(x_i) − r(x_{i+1}).
struct ScanResult {
  HPReal sup_value;
  double sup_arg = 0;
  HPReal sup_changepoint_value;
  double sup_changepoint_arg = 0;
  HPReal inf_value;
  double inf_arg = 0;
  double inf_limit_arg = 0;
  double y0 = 0;
  double y1 = 0;
  std::size_t change_points = 0;
};

struct StepPoint {
  double x;
  HPReal value;  // F on [x, next x)
};

/// steps[0].x must equal y0; the rest strictly increasing and ≤ y1. r must be
/// non-decreasing. Throws std::invalid_argument otherwise.
ScanResult scan_extremum(const std::vector<StepPoint>& steps, const std::function<HPReal(double)>& r, double y0,
                         double y1, int digits);

/// Σ_{n≤x} Λ_f(n)/n − τ log x over [1, x_max].
ScanResult drift_scan(const SummatorySeries& series, std::uint64_t x_max, int digits,
                      kernels::Exec exec = kernels::Exec::parallel);

struct SandwichBounds {
  SemigroupSpec spec;
  HPReal tau;
  HPReal c_minus;
  HPReal c_plus;
  HPReal c_f;
  std::string provenance;
};

/// Drift bounds valid for every x ≥ 1 quoted from the unconditional theorem:
/// g_{4,1}: (−1.202, 0), g_{4,3}: (log3/3 − log7/2, 0), g_{3,1}: (−1.4, 0),
/// g_{3,2}: (−log2/2, 0.2764). C_f = C_{d,a}.
SandwichBounds cited_bounds(const SemigroupSpec& spec, int digits);
/// Bounds from a drift scan over [1, x_max] (valid on the scanned range only).
SandwichBounds scanned_bounds(const SummatorySeries& series, std::uint64_t x_max, int digits);

struct Sandwich {
  HPReal lower;
  HPReal upper;
};

/// (C_f/τ) log^τ x · (1−C₊/log x)^{τ+1}/(1−C₋/log x) ≤ μ_f(x) ≤ (same with C₋, C₊ swapped).
/// Throws std::domain_error for x ≤ exp(C₊).
Sandwich mu_sandwich(const SandwichBounds& b, double x, int digits);

struct RefinementTail {
  double c_plus_prime;  // drift ≤ C'₊ for x ≥ n0
  double n0;
  double x0;  // refined bound claimed for x ≥ x0
};

struct RefinedSandwich {
  Sandwich bounds;
  double d_plus = 0;
  int iterations = 0;
};

/// Iterates D₊ ← C₊ − (C₊ − C'₊)·inf_{x≥x0} μ(x/n0)/μ(x), the ratio bounded
/// from the current sandwich, until the step is below 10⁻⁶.
RefinedSandwich mu_sandwich_refined(const SandwichBounds& b, const RefinementTail& tail, double x, int digits);

/// (11/(32π√x))(3 log²x + 8 log x + 16); needs x ≥ 224 and d ≤ 432.
HPReal grh_envelope(double x, int d, int digits);

enum class Direction { at_most, at_least };

/// ψ_f(x) ≤ slope·x (or ≥) for every real x in [x_from, x_to], exactly.
BiasVerdict psi_linear_check(const SummatorySeries& series, const HPReal& slope, Direction direction, double x_from,
                             double x_to, kernels::Exec exec = kernels::Exec::parallel);

struct PropagationInput {
  double tau, r, s, c1;
  double c_minus, c_plus;    // left side
  double cp_minus, cp_plus;  // right side
  double x1;
};

struct PropagationResult {
  bool certified = false;
  int branch = 0;  // 1: log s + C'₋ ≤ C₊ + log r, 2: otherwise
  HPReal lhs;      // left side of the rewritten inequality at x1
  HPReal rhs;      // right side
  double x0 = 0;
};

/// Throws std::domain_error unless x1 > x0 = max(exp(C'₊)s, exp(C₊)r).
PropagationResult propagation_certificate(const PropagationInput& in, int digits = 30);

enum class SquarefreeVariant { all, odd, coprime3 };
const char* variant_name(SquarefreeVariant v);

/// b(x) = α√x + β x^{1/4} + γ.
struct RemainderBound {
  double alpha = 0, beta = 0, gamma = 0;
  bool strict = false;
  std::string label;
};

/// |count(x) − c·x| ≤ b(x) (or <) for every real x in [x_from, x_to], with
/// c = 6/π², 4/π², 9/(2π²) for Q, Q_odd, Q_{χ₃}. b must be concave non-decreasing.
BiasVerdict squarefree_remainder_scan(const SieveTables& tables, SquarefreeVariant variant,
                                      const RemainderBound& bound, double x_from, double x_to,
                                      kernels::Exec exec = kernels::Exec::parallel);

}  // namespace chebias
