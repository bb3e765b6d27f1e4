#pragma once

#include <string>

#include "chebias/hpreal.hpp"

inline chebias::HPReal hp(const std::string& s, int digits = 60) { return chebias::HPReal::parse(s, digits); }

// Leading digits on which a and the literal agree.
inline int agree(const chebias::HPReal& a, const std::string& lit) {
  return chebias::agreeing_digits(a, hp(lit, a.digits() + 10));
}

// Truncated literal prefix: the value is known to `n` digits after the point,
// so compare with tolerance one unit in the last quoted place.
inline bool matches_truncated(const chebias::HPReal& a, const std::string& lit) {
  const auto dot = lit.find('.');
  const int places = static_cast<int>(lit.size() - dot - 1);
  const chebias::HPReal diff = abs(a - hp(lit, a.digits() + 10));
  return diff <= chebias::ten_to_minus(places, a.digits() + 10);
}
