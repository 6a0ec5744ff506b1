#include "stab/surface.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace stab {

namespace {
std::shared_ptr<SurfaceNode> mk(SurfaceNode::Kind k) {
  auto n = std::make_shared<SurfaceNode>();
  n->kind = k;
  return n;
}
}  // namespace

Surface SurfaceNode::atom(std::string sym, LinExpr idx) {
  auto n = mk(Kind::Atom);
  n->sym = std::move(sym);
  n->index = std::move(idx);
  return n;
}

Surface SurfaceNode::constraint(LinExpr l, CmpOp op, LinExpr r) {
  auto n = mk(Kind::Constraint);
  n->lhs = std::move(l);
  n->cmp = op;
  n->rhs = std::move(r);
  return n;
}

Surface SurfaceNode::mk_not(Surface x) {
  auto n = mk(Kind::Not);
  n->a = std::move(x);
  return n;
}

Surface SurfaceNode::binary(Kind k, Surface l, Surface r) {
  auto n = mk(k);
  n->a = std::move(l);
  n->b = std::move(r);
  return n;
}

Surface SurfaceNode::iteration(Kind k, std::string counter, LinExpr lo,
                               LinExpr hi, Surface body) {
  auto n = mk(k);
  n->counter = std::move(counter);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->a = std::move(body);
  return n;
}

Surface SurfaceNode::call(std::string name, std::vector<LinExpr> args) {
  auto n = mk(Kind::Call);
  n->callee = std::move(name);
  n->args = std::move(args);
  return n;
}

bool surface_eq(const Surface& x, const Surface& y) {
  if (x.get() == y.get()) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case SurfaceNode::Kind::Atom:
      return x->sym == y->sym && x->index == y->index;
    case SurfaceNode::Kind::Constraint:
      return x->cmp == y->cmp && x->lhs == y->lhs && x->rhs == y->rhs;
    case SurfaceNode::Kind::Not:
      return surface_eq(x->a, y->a);
    case SurfaceNode::Kind::And:
    case SurfaceNode::Kind::Or:
    case SurfaceNode::Kind::Xor:
    case SurfaceNode::Kind::Implies:
    case SurfaceNode::Kind::Iff:
      return surface_eq(x->a, y->a) && surface_eq(x->b, y->b);
    case SurfaceNode::Kind::BigAnd:
    case SurfaceNode::Kind::BigOr:
      return x->counter == y->counter && x->lo == y->lo && x->hi == y->hi &&
             surface_eq(x->a, y->a);
    case SurfaceNode::Kind::Call:
      return x->callee == y->callee && x->args == y->args;
  }
  return false;
}

bool spec_eq(const SourceSpec& a, const SourceSpec& b) {
  if (a.definitions.size() != b.definitions.size()) return false;
  for (size_t i = 0; i < a.definitions.size(); ++i) {
    if (a.definitions[i].name != b.definitions[i].name) return false;
    if (a.definitions[i].params != b.definitions[i].params) return false;
    if (!surface_eq(a.definitions[i].body, b.definitions[i].body)) return false;
  }
  return surface_eq(a.goal, b.goal);
}

// ---------------------------------------------------------------------------
// Definition inlining.

namespace {

Surface subst_surface(const Surface& s, const std::map<std::string, LinExpr>& sg) {
  switch (s->kind) {
    case SurfaceNode::Kind::Atom:
      return SurfaceNode::atom(s->sym, s->index.subst(sg));
    case SurfaceNode::Kind::Constraint:
      return SurfaceNode::constraint(s->lhs.subst(sg), s->cmp, s->rhs.subst(sg));
    case SurfaceNode::Kind::Not:
      return SurfaceNode::mk_not(subst_surface(s->a, sg));
    case SurfaceNode::Kind::And:
    case SurfaceNode::Kind::Or:
    case SurfaceNode::Kind::Xor:
    case SurfaceNode::Kind::Implies:
    case SurfaceNode::Kind::Iff:
      return SurfaceNode::binary(s->kind, subst_surface(s->a, sg),
                                 subst_surface(s->b, sg));
    case SurfaceNode::Kind::BigAnd:
    case SurfaceNode::Kind::BigOr: {
      auto inner = sg;
      inner.erase(s->counter);
      return SurfaceNode::iteration(s->kind, s->counter, s->lo.subst(sg),
                                    s->hi.subst(sg), subst_surface(s->a, inner));
    }
    case SurfaceNode::Kind::Call: {
      std::vector<LinExpr> args;
      args.reserve(s->args.size());
      for (const auto& a : s->args) args.push_back(a.subst(sg));
      return SurfaceNode::call(s->callee, std::move(args));
    }
  }
  return s;
}

Surface inline_impl(const Surface& s,
                    const std::map<std::string, const Definition*>& defs) {
  switch (s->kind) {
    case SurfaceNode::Kind::Atom:
    case SurfaceNode::Kind::Constraint:
      return s;
    case SurfaceNode::Kind::Not:
      return SurfaceNode::mk_not(inline_impl(s->a, defs));
    case SurfaceNode::Kind::And:
    case SurfaceNode::Kind::Or:
    case SurfaceNode::Kind::Xor:
    case SurfaceNode::Kind::Implies:
    case SurfaceNode::Kind::Iff:
      return SurfaceNode::binary(s->kind, inline_impl(s->a, defs),
                                 inline_impl(s->b, defs));
    case SurfaceNode::Kind::BigAnd:
    case SurfaceNode::Kind::BigOr:
      return SurfaceNode::iteration(s->kind, s->counter, s->lo, s->hi,
                                    inline_impl(s->a, defs));
    case SurfaceNode::Kind::Call: {
      auto it = defs.find(s->callee);
      if (it == defs.end())
        throw std::runtime_error("unknown definition: " + s->callee);
      const Definition& d = *it->second;
      if (d.params.size() != s->args.size())
        throw std::runtime_error("arity mismatch in call to " + s->callee);
      std::map<std::string, LinExpr> sg;
      for (size_t i = 0; i < d.params.size(); ++i) sg[d.params[i]] = s->args[i];
      // Bodies are already call-free (definitions may only use earlier ones).
      return subst_surface(d.body, sg);
    }
  }
  return s;
}

}  // namespace

Surface inline_calls(const SourceSpec& spec) {
  std::map<std::string, const Definition*> defs;
  std::vector<Definition> expanded;
  expanded.reserve(spec.definitions.size());
  for (const auto& d : spec.definitions) {
    if (defs.count(d.name))
      throw std::runtime_error("duplicate definition: " + d.name);
    Definition e = d;
    e.body = inline_impl(d.body, defs);  // uses of later/self names diagnose here
    expanded.push_back(std::move(e));
    defs[expanded.back().name] = &expanded.back();
  }
  return inline_impl(spec.goal, defs);
}

// ---------------------------------------------------------------------------
// Hygiene checks + NNF desugaring.

namespace {

void hygiene_check(const Surface& s) {
  std::set<std::string> bound_names;   // all counters seen anywhere
  std::set<std::string> free_names;    // variables with a free occurrence

  std::function<void(const Surface&, std::set<std::string>&, bool)> walk =
      [&](const Surface& x, std::set<std::string>& scope, bool in_iteration) {
        auto see_expr = [&](const LinExpr& e) {
          for (const auto& [v, c] : e.coeffs())
            if (!scope.count(v)) free_names.insert(v);
        };
        switch (x->kind) {
          case SurfaceNode::Kind::Atom:
            see_expr(x->index);
            return;
          case SurfaceNode::Kind::Constraint:
            if (in_iteration)
              throw std::runtime_error(
                  "comparison atoms may only occur outside iterations");
            see_expr(x->lhs);
            see_expr(x->rhs);
            return;
          case SurfaceNode::Kind::Not:
            walk(x->a, scope, in_iteration);
            return;
          case SurfaceNode::Kind::And:
          case SurfaceNode::Kind::Or:
          case SurfaceNode::Kind::Xor:
          case SurfaceNode::Kind::Implies:
          case SurfaceNode::Kind::Iff:
            walk(x->a, scope, in_iteration);
            walk(x->b, scope, in_iteration);
            return;
          case SurfaceNode::Kind::BigAnd:
          case SurfaceNode::Kind::BigOr: {
            see_expr(x->lo);
            see_expr(x->hi);
            if (scope.count(x->counter))
              throw std::runtime_error("iteration counter " + x->counter +
                                       " shadows an enclosing counter");
            bound_names.insert(x->counter);
            scope.insert(x->counter);
            walk(x->a, scope, true);
            scope.erase(x->counter);
            return;
          }
          case SurfaceNode::Kind::Call:
            throw std::logic_error("hygiene_check: calls must be inlined first");
        }
      };

  std::set<std::string> scope;
  walk(s, scope, false);
  for (const auto& v : free_names) {
    if (bound_names.count(v))
      throw std::runtime_error("variable " + v +
                               " is both free and bound (not well-formed)");
  }
}

Schema constraint_schema(const Surface& s, bool positive) {
  CmpOp op = s->cmp;
  if (!positive) {
    switch (op) {
      case CmpOp::Lt: op = CmpOp::Geq; break;
      case CmpOp::Gt: op = CmpOp::Leq; break;
      case CmpOp::Leq: op = CmpOp::Gt; break;
      case CmpOp::Geq: op = CmpOp::Lt; break;
      case CmpOp::Eq: op = CmpOp::Neq; break;
      case CmpOp::Neq: op = CmpOp::Eq; break;
    }
  }
  const LinExpr& a = s->lhs;
  const LinExpr& b = s->rhs;
  switch (op) {
    case CmpOp::Lt:
      return SchemaNode::less(a, b);
    case CmpOp::Gt:
      return SchemaNode::less(b, a);
    case CmpOp::Leq:
      return SchemaNode::less(a, b + 1);
    case CmpOp::Geq:
      return SchemaNode::less(b, a + 1);
    case CmpOp::Eq:
      return SchemaNode::conj({SchemaNode::less(a, b + 1), SchemaNode::less(b, a + 1)});
    case CmpOp::Neq:
      return SchemaNode::disj({SchemaNode::less(a, b), SchemaNode::less(b, a)});
  }
  return SchemaNode::bot();
}

Schema desugar_impl(const Surface& s, bool positive) {
  switch (s->kind) {
    case SurfaceNode::Kind::Atom:
      return SchemaNode::atom(s->sym, s->index, positive);
    case SurfaceNode::Kind::Constraint:
      return constraint_schema(s, positive);
    case SurfaceNode::Kind::Not:
      return desugar_impl(s->a, !positive);
    case SurfaceNode::Kind::And: {
      std::vector<Schema> xs{desugar_impl(s->a, positive),
                             desugar_impl(s->b, positive)};
      return positive ? SchemaNode::conj(std::move(xs))
                      : SchemaNode::disj(std::move(xs));
    }
    case SurfaceNode::Kind::Or: {
      std::vector<Schema> xs{desugar_impl(s->a, positive),
                             desugar_impl(s->b, positive)};
      return positive ? SchemaNode::disj(std::move(xs))
                      : SchemaNode::conj(std::move(xs));
    }
    case SurfaceNode::Kind::Implies: {
      if (positive)
        return SchemaNode::disj(
            {desugar_impl(s->a, false), desugar_impl(s->b, true)});
      return SchemaNode::conj(
          {desugar_impl(s->a, true), desugar_impl(s->b, false)});
    }
    case SurfaceNode::Kind::Iff: {
      if (positive)
        return SchemaNode::conj(
            {SchemaNode::disj({desugar_impl(s->a, false), desugar_impl(s->b, true)}),
             SchemaNode::disj({desugar_impl(s->a, true), desugar_impl(s->b, false)})});
      // xor
      return SchemaNode::conj(
          {SchemaNode::disj({desugar_impl(s->a, true), desugar_impl(s->b, true)}),
           SchemaNode::disj({desugar_impl(s->a, false), desugar_impl(s->b, false)})});
    }
    case SurfaceNode::Kind::Xor: {
      if (positive)
        return SchemaNode::conj(
            {SchemaNode::disj({desugar_impl(s->a, true), desugar_impl(s->b, true)}),
             SchemaNode::disj({desugar_impl(s->a, false), desugar_impl(s->b, false)})});
      return SchemaNode::conj(
          {SchemaNode::disj({desugar_impl(s->a, false), desugar_impl(s->b, true)}),
           SchemaNode::disj({desugar_impl(s->a, true), desugar_impl(s->b, false)})});
    }
    case SurfaceNode::Kind::BigAnd:
    case SurfaceNode::Kind::BigOr: {
      bool isAnd = (s->kind == SurfaceNode::Kind::BigAnd) == positive;
      Schema body = desugar_impl(s->a, positive);
      return isAnd ? SchemaNode::big_and(s->counter, s->lo, s->hi, std::move(body))
                   : SchemaNode::big_or(s->counter, s->lo, s->hi, std::move(body));
    }
    case SurfaceNode::Kind::Call:
      throw std::logic_error("desugar: calls must be inlined first");
  }
  return SchemaNode::bot();
}

}  // namespace

Schema nnf(const Surface& s) {
  hygiene_check(s);
  Schema core = desugar_impl(s, true);
  // Connective duplication (<->, (+)) may have copied iteration bodies;
  // rename counters apart again.
  FreshNames names;
  for (const auto& v : free_vars(core)) names.reserve(v);
  std::set<std::string> syms;
  collect_symbols(core, syms);
  for (const auto& v : syms) names.reserve(v);
  core = refresh_counters(core, names);
  if (contains_less(core)) {
    // Defensive re-check at the core level (Less under an iteration).
    std::function<void(const Schema&, bool)> chk = [&](const Schema& x, bool inside) {
      switch (x->kind) {
        case SchemaNode::Kind::Less:
          if (inside)
            throw std::runtime_error(
                "comparison atoms may only occur outside iterations");
          return;
        case SchemaNode::Kind::And:
        case SchemaNode::Kind::Or:
          for (const auto& y : x->items) chk(y, inside);
          return;
        case SchemaNode::Kind::BigAnd:
        case SchemaNode::Kind::BigOr:
          chk(x->body, true);
          return;
        default:
          return;
      }
    };
    chk(core, false);
  }
  return core;
}

Schema desugar(const SourceSpec& spec) { return nnf(inline_calls(spec)); }

// ---------------------------------------------------------------------------
// Printing.

namespace {

const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Leq: return "<=";
    case CmpOp::Geq: return ">=";
    case CmpOp::Eq: return "=";
    case CmpOp::Neq: return "!=";
  }
  return "?";
}

// Precedence levels, higher binds tighter:
// 1 <-> ; 2 -> ; 3 (+) ; 4 \/ ; 5 /\ ; 6 unary (~, iteration, atom).
int prec_of(const Surface& s) {
  switch (s->kind) {
    case SurfaceNode::Kind::Iff: return 1;
    case SurfaceNode::Kind::Implies: return 2;
    case SurfaceNode::Kind::Xor: return 3;
    case SurfaceNode::Kind::Or: return 4;
    case SurfaceNode::Kind::And: return 5;
    default: return 6;
  }
}

void print_surface(std::ostringstream& os, const Surface& s, int min_prec) {
  int p = prec_of(s);
  bool paren = p < min_prec;
  if (paren) os << "(";
  switch (s->kind) {
    case SurfaceNode::Kind::Atom: {
      os << s->sym << "_";
      if (s->index.is_constant() && s->index.constant_term() >= 0)
        os << s->index.constant_term().str();
      else if (!s->index.is_constant() && s->index.coeffs().size() == 1 &&
               s->index.constant_term() == 0 &&
               s->index.coeffs().begin()->second == 1)
        os << s->index.coeffs().begin()->first;
      else
        os << "{" << s->index.str() << "}";
      break;
    }
    case SurfaceNode::Kind::Constraint:
      os << s->lhs.str() << " " << cmp_str(s->cmp) << " " << s->rhs.str();
      break;
    case SurfaceNode::Kind::Not:
      os << "~";
      print_surface(os, s->a, 6);
      break;
    case SurfaceNode::Kind::And:
      print_surface(os, s->a, 5);
      os << " /\\ ";
      print_surface(os, s->b, 6);  // left-assoc
      break;
    case SurfaceNode::Kind::Or:
      print_surface(os, s->a, 4);
      os << " \\/ ";
      print_surface(os, s->b, 5);
      break;
    case SurfaceNode::Kind::Xor:
      print_surface(os, s->a, 3);
      os << " (+) ";
      print_surface(os, s->b, 4);
      break;
    case SurfaceNode::Kind::Implies:
      print_surface(os, s->a, 3);  // right-assoc
      os << " -> ";
      print_surface(os, s->b, 2);
      break;
    case SurfaceNode::Kind::Iff:
      print_surface(os, s->a, 1);
      os << " <-> ";
      print_surface(os, s->b, 2);
      break;
    case SurfaceNode::Kind::BigAnd:
    case SurfaceNode::Kind::BigOr:
      os << (s->kind == SurfaceNode::Kind::BigAnd ? "/\\" : "\\/");
      os << s->counter << "=" << s->lo.str() << ".." << s->hi.str() << " ";
      print_surface(os, s->a, 6);
      break;
    case SurfaceNode::Kind::Call: {
      os << s->callee << "(";
      for (size_t i = 0; i < s->args.size(); ++i) {
        if (i) os << ", ";
        os << s->args[i].str();
      }
      os << ")";
      break;
    }
  }
  if (paren) os << ")";
}

}  // namespace

std::string surface_str(const Surface& s) {
  std::ostringstream os;
  print_surface(os, s, 0);
  return os.str();
}

std::string spec_str(const SourceSpec& spec) {
  std::ostringstream os;
  for (const auto& d : spec.definitions) {
    os << "let " << d.name << "(";
    for (size_t i = 0; i < d.params.size(); ++i) {
      if (i) os << ", ";
      os << d.params[i];
    }
    os << ") := " << surface_str(d.body) << " in\n";
  }
  os << surface_str(spec.goal) << "\n";
  return os.str();
}

}  // namespace stab
