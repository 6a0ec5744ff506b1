#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stab/linexpr.hpp"

namespace stab {

// Boolean combination of strict-inequality atoms over the integers.
// Leq / Eq / Neq are desugared at construction, so Less is the only
// comparison kept in the tree; negation is pushed to the leaves on the
// fly (over Z the complement of a < b is b < a+1).
class ArithFormula {
 public:
  enum class Kind { True, False, Less, And, Or };

  static ArithFormula tt();
  static ArithFormula ff();
  static ArithFormula less(LinExpr a, LinExpr b);
  static ArithFormula leq(const LinExpr& a, const LinExpr& b);
  static ArithFormula geq(const LinExpr& a, const LinExpr& b);
  static ArithFormula greater(const LinExpr& a, const LinExpr& b);
  static ArithFormula eq(const LinExpr& a, const LinExpr& b);
  static ArithFormula neq(const LinExpr& a, const LinExpr& b);
  static ArithFormula conj(std::vector<ArithFormula> parts);
  static ArithFormula disj(std::vector<ArithFormula> parts);

  ArithFormula negate() const;

  Kind kind() const { return kind_; }
  const LinExpr& lhs() const { return lhs_; }
  const LinExpr& rhs() const { return rhs_; }
  const std::vector<ArithFormula>& parts() const { return parts_; }

  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }

  bool eval(const std::map<std::string, Int>& env) const;
  ArithFormula subst(const std::map<std::string, LinExpr>& sigma) const;
  void collect_vars(std::set<std::string>& out) const;

  bool operator==(const ArithFormula& o) const;

  std::string str() const;

 private:
  ArithFormula() = default;
  Kind kind_ = Kind::True;
  LinExpr lhs_, rhs_;                // Less
  std::vector<ArithFormula> parts_;  // And / Or
};

using IntAssignment = std::map<std::string, Int>;

// Satisfiability of a quantifier-free formula over the integers, by
// Cooper-style elimination of one variable at a time. Variables listed in
// `nonneg` are additionally constrained to be >= 0. Returns a witness on
// success; the witness is deterministic (smallest magnitude satisfying
// values, preferring nonnegative ones).
std::optional<IntAssignment> lia_sat(const ArithFormula& f,
                                     const std::set<std::string>& nonneg = {});

// True iff every integer assignment (with `nonneg` respected) satisfying
// `hyp` also satisfies `concl`.
bool lia_entails(const ArithFormula& hyp, const ArithFormula& concl,
                 const std::set<std::string>& nonneg = {});

bool lia_valid(const ArithFormula& f, const std::set<std::string>& nonneg = {});

// A bound B such that, if f is satisfiable (under nonneg), some solution
// lies in the box [-B, B]^k. Computed from the solver's own witness.
Int lia_small_model_bound(const ArithFormula& f,
                          const std::set<std::string>& nonneg = {});

}  // namespace stab
