#pragma once

// Fundamental constants and special values: π, Euler's γ, the
// arithmetic-geometric mean, and Γ(1/3), Γ(3/4) by inverting AGM identities.

#include <gmpxx.h>

#include "chebias/hpreal.hpp"

namespace chebias {

/// π via Machin's formula 16·arctan(1/5) − 4·arctan(1/239).
HPReal const_pi(int digits);

/// Euler's constant by the Brent–McMillan Bessel-ratio scheme.
HPReal const_gamma(int digits);

/// One step of Lagrange's AGM iteration a ← (a+b)/2, b ← √(ab).
struct AgmState {
  HPReal a;
  HPReal b;
  int iteration = 0;

  AgmState step() const;
};

/// Common limit of the AGM iteration. Throws std::domain_error unless a, b > 0.
HPReal agm(const HPReal& a, const HPReal& b, int digits);

/// Number of AGM steps used by the most recent agm() call on this thread.
int last_agm_iterations();

enum class GammaArgument { one_third, three_quarters };

/// Γ(3/4) from M(1,√2) = √(2/π)·Γ(3/4)²; Γ(1/3) from
/// M(1+z,1−z) = 2^{4/3}π² / (3^{1/4}Γ(1/3)³) with z = sin(π/12).
HPReal gamma_fraction(GammaArgument which, int digits);

/// z = sin(π/12) = (√3 − 1)/√8.
HPReal sin_pi_over_12(int digits);

/// Lemniscate constant π / M(1,√2).
HPReal lemniscate_constant(int digits);

/// Bernoulli number B_n as an exact rational (B_1 = −1/2 convention).
const mpq_class& bernoulli(int n);

}  // namespace chebias
