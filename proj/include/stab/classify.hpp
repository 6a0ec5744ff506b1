#pragma once

#include <optional>
#include <string>

#include "stab/schema.hpp"

namespace stab {

// Classification of a schema against the bound-linear and regular classes.
struct ClassReport {
  bool is_bound_linear = false;
  std::string bound_linear_violation;  // first offending atom/iteration

  bool is_regular = false;
  std::string regular_violation;  // which condition fails and where

  bool flat = false;
  bool bounded_propagation = false;
  bool aligned = false;
  bool single_parameter = false;

  // when regular
  std::optional<std::pair<Int, Int>> propagation_limits;  // [alpha, beta]
  std::optional<std::pair<Int, Int>> alignment;           // lower alpha, upper offset beta

  std::string str() const;
};

ClassReport classify(const Schema& phi);

}  // namespace stab
