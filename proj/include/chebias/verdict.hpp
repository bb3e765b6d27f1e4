#pragma once

#include <optional>
#include <string>

namespace chebias {

/// Outcome of an exact "left ≥ right on [x_from, x_to]" style check.
struct BiasVerdict {
  std::string metric;
  std::string left;
  std::string right;
  double x_from = 0;
  double x_to = 0;
  bool holds = true;
  std::optional<double> first_violation;
  std::optional<double> last_violation;
  std::string left_value;   // at first_violation
  std::string right_value;  // at first_violation
  std::string note;
};

}  // namespace chebias
