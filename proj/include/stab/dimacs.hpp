#pragma once

#include <string>
#include <vector>

#include "stab/schema.hpp"

namespace stab {

struct DimacsOutput {
  std::string text;
  // variable map: 1-based ids for the source variables (fresh definitional
  // variables have no entry)
  std::vector<std::pair<std::string, Int>> vars;
};

// Expands the schema at a fixed parameter value and clausifies it with fresh
// definitional variables; the result is equisatisfiable with the instance.
// Throws if the schema has more than one parameter.
DimacsOutput to_dimacs(const Schema& phi, const Int& n_value);

// Minimal DIMACS reader for the round-trip tests.
struct DimacsFile {
  int nvars = 0;
  std::vector<std::vector<int>> clauses;
};
DimacsFile parse_dimacs(const std::string& text);

}  // namespace stab
