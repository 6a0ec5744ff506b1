#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stab/schema.hpp"

namespace stab {

using PropAssignment = std::map<std::pair<std::string, Int>, bool>;

// Clause-level DPLL (unit propagation + chronological backtracking).
// Literals are nonzero ints, DIMACS convention; clauses index variables
// from 1 to nvars. Returns a total assignment (index 1..nvars) or nullopt.
std::optional<std::vector<bool>> dpll(const std::vector<std::vector<int>>& clauses,
                                      int nvars);

// Equisatisfiable clausification with fresh definitional variables
// (plain clauses stay plain; only nested structure gets definitions).
struct ClausifyResult {
  std::vector<std::vector<int>> clauses;
  int nvars = 0;
  std::vector<std::pair<std::string, Int>> source_vars;   // in id order
  std::map<std::pair<std::string, Int>, int> var_ids;     // source vars only
};
ClausifyResult clausify(const Schema& f);

// Satisfiability of a ground propositional schema (the PropFormula shape
// produced by realize). The schema is clausified with fresh definitional
// variables first; the returned witness only mentions source variables.
std::optional<PropAssignment> prop_sat(const Schema& f);

// Scans parameter assignments in increasing total order (sum, then lex)
// up to max_param per parameter and returns the first satisfiable instance.
struct EnumResult {
  IntAssignment params;
  PropAssignment props;
};
std::optional<EnumResult> naive_enumerate(const Schema& s, const Int& max_param);

}  // namespace stab
