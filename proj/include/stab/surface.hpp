#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stab/schema.hpp"

namespace stab {

// Surface formulas as parsed: full connective set, definition calls,
// comparison operators. Desugaring to the NNF core happens in nnf().
struct SurfaceNode;
using Surface = std::shared_ptr<const SurfaceNode>;

enum class CmpOp { Lt, Gt, Leq, Geq, Eq, Neq };

struct SurfaceNode {
  enum class Kind { Atom, Constraint, Not, And, Or, Xor, Implies, Iff, BigAnd, BigOr, Call };
  Kind kind;
  // Atom
  std::string sym;
  LinExpr index;
  // Constraint
  CmpOp cmp = CmpOp::Lt;
  LinExpr lhs, rhs;
  // unary / binary
  Surface a, b;
  // BigAnd / BigOr
  std::string counter;
  LinExpr lo, hi;
  // Call
  std::string callee;
  std::vector<LinExpr> args;

  static Surface atom(std::string sym, LinExpr idx);
  static Surface constraint(LinExpr l, CmpOp op, LinExpr r);
  static Surface mk_not(Surface x);
  static Surface binary(Kind k, Surface l, Surface r);
  static Surface iteration(Kind k, std::string counter, LinExpr lo, LinExpr hi, Surface body);
  static Surface call(std::string name, std::vector<LinExpr> args);
};

bool surface_eq(const Surface& a, const Surface& b);

struct Definition {
  std::string name;
  std::vector<std::string> params;
  Surface body;
};

struct SourceSpec {
  std::vector<Definition> definitions;
  Surface goal;
};

bool spec_eq(const SourceSpec& a, const SourceSpec& b);

// Inlines definition calls (macros, non-recursive by construction).
Surface inline_calls(const SourceSpec& spec);

// Desugars a surface formula into the NNF core. Performs the hygiene checks:
// no variable both free and bound, no counter shadowing, no comparison atom
// under an iteration. Counters are renamed apart deterministically.
Schema nnf(const Surface& s);
Schema desugar(const SourceSpec& spec);

std::string surface_str(const Surface& s);
std::string spec_str(const SourceSpec& spec);

}  // namespace stab
