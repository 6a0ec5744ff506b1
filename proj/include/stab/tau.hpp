#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "stab/classify.hpp"
#include "stab/schema.hpp"

namespace stab {

// Bookkeeping for the parameter-removal renaming: a bijection between the
// fresh symbols and (source symbol, half-coefficient alpha, sign).
struct RenamedAtom {
  std::string source;
  Int alpha;
  bool plus;
};

struct RenamedAtomTable {
  std::map<std::string, RenamedAtom> fresh_to_source;
  std::map<std::tuple<std::string, std::string, bool>, std::string> key_to_fresh;

  bool empty() const { return fresh_to_source.empty(); }
};

// Returns phi unchanged when every coefficient of the parameter is already
// even, otherwise the case split phi[2n/n] \/ phi[2n+1/n] (sat-equivalent,
// not equivalent). Throws if phi is not bound-linear.
Schema normalize_even(const Schema& phi);

struct TauResult {
  Schema schema;
  std::vector<std::string> trace;  // "RULE <name> AT <path> -> <size>"
  RenamedAtomTable table;
};

// Compiles a normalized bound-linear schema into a regular one. Rules are
// tried in presentation order on every pass (a later rule can reintroduce
// earlier redexes, e.g. the inductive encoding creates counter-free atoms
// inside iterations).
TauResult tau_transform(const Schema& phi);

// The renaming step in isolation (test access): replaces every atom
// p_{2a.n+e} / p_{2a.n-e} by a fresh symbol indexed by e, and returns the
// guarded equivalences relating renamed atoms that can denote the same
// source variable.
struct Tau9Result {
  Schema renamed;
  RenamedAtomTable table;
  std::vector<Schema> equivalences;
};
Tau9Result tau9_rename(const Schema& phi, FreshNames& names);

std::vector<Schema> relevant_equivalences(const Schema& phi_bar,
                                          const RenamedAtomTable& table);

}  // namespace stab
