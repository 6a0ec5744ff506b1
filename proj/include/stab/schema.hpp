#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stab/arith.hpp"
#include "stab/linexpr.hpp"

namespace stab {

class SchemaNode;
using Schema = std::shared_ptr<const SchemaNode>;

// Formula schema in negation normal form: negation lives only on indexed
// atoms, the surface connectives are desugared by the frontend. And/Or are
// n-ary and flattened, with top/bottom simplification applied eagerly.
class SchemaNode {
 public:
  enum class Kind { Top, Bot, Less, Atom, And, Or, BigAnd, BigOr };

  Kind kind;
  // Less
  LinExpr lhs, rhs;
  // Atom
  std::string sym;
  LinExpr index;
  bool positive = true;
  // And / Or
  std::vector<Schema> items;
  // BigAnd / BigOr
  std::string counter;
  LinExpr lo, hi;
  Schema body;

  static Schema top();
  static Schema bot();
  static Schema less(LinExpr a, LinExpr b);
  static Schema atom(std::string sym, LinExpr index, bool positive = true);
  static Schema conj(std::vector<Schema> items);
  static Schema disj(std::vector<Schema> items);
  static Schema big_and(std::string counter, LinExpr lo, LinExpr hi, Schema body);
  static Schema big_or(std::string counter, LinExpr lo, LinExpr hi, Schema body);
  // Embeds an arithmetic formula as a schema (and back).
  static Schema from_arith(const ArithFormula& f);
};

int schema_cmp(const Schema& a, const Schema& b);
bool schema_eq(const Schema& a, const Schema& b);
struct SchemaLess {
  bool operator()(const Schema& a, const Schema& b) const {
    return schema_cmp(a, b) < 0;
  }
};

// True iff the schema contains no indexed proposition and no iteration
// (arithmetic formulae act as branch constraints in the tableau).
bool is_arithmetic(const Schema& s);
ArithFormula to_arith(const Schema& s);

bool is_literal(const Schema& s);
bool contains_iteration(const Schema& s);
bool contains_less(const Schema& s);

// NNF negation: dualizes connectives and iterations, flips atom polarity,
// complements Less over the integers.
Schema negate(const Schema& s);

size_t schema_size(const Schema& s);

void collect_free_vars(const Schema& s, std::set<std::string>& out);
std::set<std::string> free_vars(const Schema& s);
void collect_counters(const Schema& s, std::set<std::string>& out);
void collect_symbols(const Schema& s, std::set<std::string>& out);

using Substitution = std::map<std::string, LinExpr>;

// Applies sigma to the free arithmetic variables; bound counters are left
// untouched. Throws if the substitution would capture a counter.
Schema substitute(const Schema& s, const Substitution& sigma);

// Internal variant used by unfolding and the tau rules: also rewrites the
// named counter occurrences (the caller peels or shifts its own binder).
Schema substitute_counter(const Schema& s, const std::string& counter,
                          const LinExpr& repl);

// Deterministic fresh-name supply seeded with every name already in use.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> used = {}) : used_(std::move(used)) {}
  void reserve(const std::string& n) { used_.insert(n); }
  void reserve_all(const Schema& s);
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

// Renames every bound counter in s to a fresh name (used whenever a body is
// duplicated, so the pairwise-distinct-counters invariant survives rewriting).
Schema refresh_counters(const Schema& s, FreshNames& names);

// Def. 2.5 semantics.
struct Interpretation {
  IntAssignment params;  // values in N
  std::map<std::pair<std::string, Int>, bool> props;

  bool prop(const std::string& sym, const Int& idx) const {
    auto it = props.find({sym, idx});
    return it == props.end() ? false : it->second;
  }
};

bool eval_schema(const Schema& s, const Interpretation& interp);

// min/max interval analysis for the variable v in phi (v may be bound);
// the result mentions only variables free in phi.
struct Bounds {
  LinExpr min, max;
};
Bounds bounds(const Schema& phi, const std::string& v);

// Conjunction of min <= i <= max over every counter bound in the set.
ArithFormula interval_constraints(const std::vector<Schema>& phis);

// Propositional realization [phi]_sigma: grounds every parameter, unfolds
// all iterations via the rewrite system S and evaluates Less atoms away.
// The result contains only Top/Bot/Atom/And/Or with ground indices.
Schema realize(const Schema& s, const Substitution& sigma);
bool is_prop_formula(const Schema& s);

// One-step-at-a-time variant of S used by the confluence tests: peels
// iterations with integer bounds binary-style without flattening.
enum class UnfoldOrder { OutermostFirst, InnermostFirst };
Schema s_normalize_steps(const Schema& s, UnfoldOrder order);

std::string schema_str(const Schema& s);

}  // namespace stab
