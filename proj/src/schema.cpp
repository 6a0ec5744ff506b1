#include "stab/schema.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace stab {

namespace {

std::shared_ptr<SchemaNode> make(SchemaNode::Kind k) {
  auto n = std::make_shared<SchemaNode>();
  n->kind = k;
  return n;
}

}  // namespace

Schema SchemaNode::top() {
  static const Schema t = make(Kind::Top);
  return t;
}

Schema SchemaNode::bot() {
  static const Schema b = make(Kind::Bot);
  return b;
}

Schema SchemaNode::less(LinExpr a, LinExpr b) {
  LinExpr d = a - b;
  if (d.is_constant()) return d.constant_term() < 0 ? top() : bot();
  auto n = make(Kind::Less);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

Schema SchemaNode::atom(std::string sym, LinExpr index, bool positive) {
  auto n = make(Kind::Atom);
  n->sym = std::move(sym);
  n->index = std::move(index);
  n->positive = positive;
  return n;
}

Schema SchemaNode::conj(std::vector<Schema> items) {
  std::vector<Schema> out;
  for (auto& it : items) {
    if (!it) continue;
    if (it->kind == Kind::Bot) return bot();
    if (it->kind == Kind::Top) continue;
    if (it->kind == Kind::And) {
      for (const auto& sub : it->items) out.push_back(sub);
    } else {
      out.push_back(std::move(it));
    }
  }
  if (out.empty()) return top();
  if (out.size() == 1) return out[0];
  auto n = make(Kind::And);
  n->items = std::move(out);
  return n;
}

Schema SchemaNode::disj(std::vector<Schema> items) {
  std::vector<Schema> out;
  for (auto& it : items) {
    if (!it) continue;
    if (it->kind == Kind::Top) return top();
    if (it->kind == Kind::Bot) continue;
    if (it->kind == Kind::Or) {
      for (const auto& sub : it->items) out.push_back(sub);
    } else {
      out.push_back(std::move(it));
    }
  }
  if (out.empty()) return bot();
  if (out.size() == 1) return out[0];
  auto n = make(Kind::Or);
  n->items = std::move(out);
  return n;
}

Schema SchemaNode::big_and(std::string counter, LinExpr lo, LinExpr hi,
                           Schema body) {
  if (body->kind == Kind::Top) return top();
  if (lo.is_constant() && hi.is_constant() &&
      hi.constant_term() < lo.constant_term())
    return top();
  auto n = make(Kind::BigAnd);
  n->counter = std::move(counter);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->body = std::move(body);
  return n;
}

Schema SchemaNode::big_or(std::string counter, LinExpr lo, LinExpr hi,
                          Schema body) {
  if (body->kind == Kind::Bot) return bot();
  if (lo.is_constant() && hi.is_constant() &&
      hi.constant_term() < lo.constant_term())
    return bot();
  auto n = make(Kind::BigOr);
  n->counter = std::move(counter);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->body = std::move(body);
  return n;
}

Schema SchemaNode::from_arith(const ArithFormula& f) {
  switch (f.kind()) {
    case ArithFormula::Kind::True:
      return top();
    case ArithFormula::Kind::False:
      return bot();
    case ArithFormula::Kind::Less:
      return less(f.lhs(), f.rhs());
    case ArithFormula::Kind::And: {
      std::vector<Schema> xs;
      for (const auto& p : f.parts()) xs.push_back(from_arith(p));
      return conj(std::move(xs));
    }
    case ArithFormula::Kind::Or: {
      std::vector<Schema> xs;
      for (const auto& p : f.parts()) xs.push_back(from_arith(p));
      return disj(std::move(xs));
    }
  }
  return bot();
}

namespace {

int lin_cmp(const LinExpr& a, const LinExpr& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

int schema_cmp(const Schema& a, const Schema& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
      return 0;
    case SchemaNode::Kind::Less: {
      if (int c = lin_cmp(a->lhs, b->lhs)) return c;
      return lin_cmp(a->rhs, b->rhs);
    }
    case SchemaNode::Kind::Atom: {
      if (a->sym != b->sym) return a->sym < b->sym ? -1 : 1;
      if (a->positive != b->positive) return a->positive ? -1 : 1;
      return lin_cmp(a->index, b->index);
    }
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      if (a->items.size() != b->items.size())
        return a->items.size() < b->items.size() ? -1 : 1;
      for (size_t i = 0; i < a->items.size(); ++i)
        if (int c = schema_cmp(a->items[i], b->items[i])) return c;
      return 0;
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      if (a->counter != b->counter) return a->counter < b->counter ? -1 : 1;
      if (int c = lin_cmp(a->lo, b->lo)) return c;
      if (int c = lin_cmp(a->hi, b->hi)) return c;
      return schema_cmp(a->body, b->body);
    }
  }
  return 0;
}

bool schema_eq(const Schema& a, const Schema& b) { return schema_cmp(a, b) == 0; }

bool is_arithmetic(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
    case SchemaNode::Kind::Less:
      return true;
    case SchemaNode::Kind::Atom:
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return false;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      return std::all_of(s->items.begin(), s->items.end(),
                         [](const Schema& x) { return is_arithmetic(x); });
  }
  return false;
}

ArithFormula to_arith(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
      return ArithFormula::tt();
    case SchemaNode::Kind::Bot:
      return ArithFormula::ff();
    case SchemaNode::Kind::Less:
      return ArithFormula::less(s->lhs, s->rhs);
    case SchemaNode::Kind::And: {
      std::vector<ArithFormula> ps;
      for (const auto& x : s->items) ps.push_back(to_arith(x));
      return ArithFormula::conj(std::move(ps));
    }
    case SchemaNode::Kind::Or: {
      std::vector<ArithFormula> ps;
      for (const auto& x : s->items) ps.push_back(to_arith(x));
      return ArithFormula::disj(std::move(ps));
    }
    default:
      throw std::logic_error("to_arith: schema is not arithmetic");
  }
}

bool is_literal(const Schema& s) { return s->kind == SchemaNode::Kind::Atom; }

bool contains_iteration(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return true;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      return std::any_of(s->items.begin(), s->items.end(),
                         [](const Schema& x) { return contains_iteration(x); });
    default:
      return false;
  }
}

bool contains_less(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::Less:
      return true;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      return std::any_of(s->items.begin(), s->items.end(),
                         [](const Schema& x) { return contains_less(x); });
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return contains_less(s->body);
    default:
      return false;
  }
}

Schema negate(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
      return SchemaNode::bot();
    case SchemaNode::Kind::Bot:
      return SchemaNode::top();
    case SchemaNode::Kind::Less:
      return SchemaNode::less(s->rhs, s->lhs + 1);
    case SchemaNode::Kind::Atom:
      return SchemaNode::atom(s->sym, s->index, !s->positive);
    case SchemaNode::Kind::And: {
      std::vector<Schema> xs;
      for (const auto& x : s->items) xs.push_back(negate(x));
      return SchemaNode::disj(std::move(xs));
    }
    case SchemaNode::Kind::Or: {
      std::vector<Schema> xs;
      for (const auto& x : s->items) xs.push_back(negate(x));
      return SchemaNode::conj(std::move(xs));
    }
    case SchemaNode::Kind::BigAnd:
      return SchemaNode::big_or(s->counter, s->lo, s->hi, negate(s->body));
    case SchemaNode::Kind::BigOr:
      return SchemaNode::big_and(s->counter, s->lo, s->hi, negate(s->body));
  }
  return SchemaNode::bot();
}

size_t schema_size(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      size_t n = 1;
      for (const auto& x : s->items) n += schema_size(x);
      return n;
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return 1 + schema_size(s->body);
    default:
      return 1;
  }
}

namespace {

void free_vars_impl(const Schema& s, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  auto add = [&](const LinExpr& e) {
    for (const auto& [v, c] : e.coeffs())
      if (!bound.count(v)) out.insert(v);
  };
  switch (s->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
      return;
    case SchemaNode::Kind::Less:
      add(s->lhs);
      add(s->rhs);
      return;
    case SchemaNode::Kind::Atom:
      add(s->index);
      return;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items) free_vars_impl(x, bound, out);
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      add(s->lo);
      add(s->hi);
      bool inserted = bound.insert(s->counter).second;
      free_vars_impl(s->body, bound, out);
      if (inserted) bound.erase(s->counter);
      return;
    }
  }
}

}  // namespace

void collect_free_vars(const Schema& s, std::set<std::string>& out) {
  std::set<std::string> bound;
  free_vars_impl(s, bound, out);
}

std::set<std::string> free_vars(const Schema& s) {
  std::set<std::string> out;
  collect_free_vars(s, out);
  return out;
}

void collect_counters(const Schema& s, std::set<std::string>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items) collect_counters(x, out);
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      out.insert(s->counter);
      collect_counters(s->body, out);
      return;
    default:
      return;
  }
}

void collect_symbols(const Schema& s, std::set<std::string>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::Atom:
      out.insert(s->sym);
      return;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items) collect_symbols(x, out);
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      collect_symbols(s->body, out);
      return;
    default:
      return;
  }
}

namespace {

Schema subst_impl(const Schema& s, const Substitution& sigma) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
      return s;
    case SchemaNode::Kind::Less:
      return SchemaNode::less(s->lhs.subst(sigma), s->rhs.subst(sigma));
    case SchemaNode::Kind::Atom:
      return SchemaNode::atom(s->sym, s->index.subst(sigma), s->positive);
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> xs;
      xs.reserve(s->items.size());
      for (const auto& x : s->items) xs.push_back(subst_impl(x, sigma));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(xs))
                                              : SchemaNode::disj(std::move(xs));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Substitution inner = sigma;
      inner.erase(s->counter);
      Schema body = subst_impl(s->body, inner);
      LinExpr lo = s->lo.subst(sigma);
      LinExpr hi = s->hi.subst(sigma);
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(s->counter, std::move(lo), std::move(hi),
                                       std::move(body))
                 : SchemaNode::big_or(s->counter, std::move(lo), std::move(hi),
                                      std::move(body));
    }
  }
  return s;
}

}  // namespace

Schema substitute(const Schema& s, const Substitution& sigma) {
  std::set<std::string> counters;
  collect_counters(s, counters);
  for (const auto& [v, e] : sigma) {
    std::set<std::string> evars;
    e.collect_vars(evars);
    for (const auto& ev : evars) {
      if (counters.count(ev))
        throw std::runtime_error(
            "hygiene violation: substitution for " + v +
            " would capture bound counter " + ev);
    }
  }
  return subst_impl(s, sigma);
}

Schema substitute_counter(const Schema& s, const std::string& counter,
                          const LinExpr& repl) {
  return subst_impl(s, Substitution{{counter, repl}});
}

void FreshNames::reserve_all(const Schema& s) {
  std::set<std::string> vs = free_vars(s);
  used_.insert(vs.begin(), vs.end());
  std::set<std::string> cs;
  collect_counters(s, cs);
  used_.insert(cs.begin(), cs.end());
  std::set<std::string> syms;
  collect_symbols(s, syms);
  used_.insert(syms.begin(), syms.end());
}

std::string FreshNames::fresh(const std::string& base) {
  if (used_.insert(base).second) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used_.insert(cand).second) return cand;
  }
}

Schema refresh_counters(const Schema& s, FreshNames& names) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> xs;
      xs.reserve(s->items.size());
      for (const auto& x : s->items) xs.push_back(refresh_counters(x, names));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(xs))
                                              : SchemaNode::disj(std::move(xs));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      std::string c2 = names.fresh(s->counter);
      Schema body = s->body;
      if (c2 != s->counter)
        body = subst_impl(body, Substitution{{s->counter, LinExpr::var(c2)}});
      body = refresh_counters(body, names);
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(c2, s->lo, s->hi, std::move(body))
                 : SchemaNode::big_or(c2, s->lo, s->hi, std::move(body));
    }
    default:
      return s;
  }
}

namespace {

bool eval_impl(const Schema& s, const Interpretation& interp,
               std::map<std::string, Int>& env) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
      return true;
    case SchemaNode::Kind::Bot:
      return false;
    case SchemaNode::Kind::Less:
      return s->lhs.eval(env) < s->rhs.eval(env);
    case SchemaNode::Kind::Atom: {
      bool v = interp.prop(s->sym, s->index.eval(env));
      return s->positive ? v : !v;
    }
    case SchemaNode::Kind::And:
      for (const auto& x : s->items)
        if (!eval_impl(x, interp, env)) return false;
      return true;
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items)
        if (eval_impl(x, interp, env)) return true;
      return false;
    case SchemaNode::Kind::BigAnd: {
      Int lo = s->lo.eval(env), hi = s->hi.eval(env);
      for (Int k = lo; k <= hi; ++k) {
        auto saved = env.find(s->counter) != env.end()
                         ? std::optional<Int>(env[s->counter])
                         : std::nullopt;
        env[s->counter] = k;
        bool ok = eval_impl(s->body, interp, env);
        if (saved)
          env[s->counter] = *saved;
        else
          env.erase(s->counter);
        if (!ok) return false;
      }
      return true;
    }
    case SchemaNode::Kind::BigOr: {
      Int lo = s->lo.eval(env), hi = s->hi.eval(env);
      for (Int k = lo; k <= hi; ++k) {
        auto saved = env.find(s->counter) != env.end()
                         ? std::optional<Int>(env[s->counter])
                         : std::nullopt;
        env[s->counter] = k;
        bool ok = eval_impl(s->body, interp, env);
        if (saved)
          env[s->counter] = *saved;
        else
          env.erase(s->counter);
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

bool eval_schema(const Schema& s, const Interpretation& interp) {
  for (const auto& v : free_vars(s)) {
    if (!interp.params.count(v))
      throw std::runtime_error("eval_schema: unassigned parameter " + v);
  }
  std::map<std::string, Int> env = interp.params;
  return eval_impl(s, interp, env);
}

// ---------------------------------------------------------------------------
// min/max interval analysis (the four structural rules before Lemma 2.8).

namespace {

struct BinderMap {
  std::map<std::string, std::pair<LinExpr, LinExpr>> binders;
};

void collect_binders(const Schema& s, BinderMap& bm) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items) collect_binders(x, bm);
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      bm.binders[s->counter] = {s->lo, s->hi};
      collect_binders(s->body, bm);
      return;
    default:
      return;
  }
}

struct MinMax {
  LinExpr min, max;
};

MinMax minmax_expr(const LinExpr& e, const BinderMap& bm);

MinMax minmax_var(const std::string& v, const BinderMap& bm) {
  auto it = bm.binders.find(v);
  if (it == bm.binders.end()) {
    return {LinExpr::var(v), LinExpr::var(v)};
  }
  MinMax lo = minmax_expr(it->second.first, bm);
  MinMax hi = minmax_expr(it->second.second, bm);
  return {lo.min, hi.max};
}

MinMax minmax_expr(const LinExpr& e, const BinderMap& bm) {
  MinMax r{LinExpr::constant(e.constant_term()),
           LinExpr::constant(e.constant_term())};
  for (const auto& [v, c] : e.coeffs()) {
    MinMax mv = minmax_var(v, bm);
    if (c > 0) {
      r.min = r.min + mv.min * c;
      r.max = r.max + mv.max * c;
    } else {
      r.min = r.min + mv.max * c;
      r.max = r.max + mv.min * c;
    }
  }
  return r;
}

bool occurs_var(const Schema& s, const std::string& v) {
  switch (s->kind) {
    case SchemaNode::Kind::Less:
      return s->lhs.mentions(v) || s->rhs.mentions(v);
    case SchemaNode::Kind::Atom:
      return s->index.mentions(v);
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      return std::any_of(s->items.begin(), s->items.end(),
                         [&](const Schema& x) { return occurs_var(x, v); });
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return s->counter == v || s->lo.mentions(v) || s->hi.mentions(v) ||
             occurs_var(s->body, v);
    default:
      return false;
  }
}

}  // namespace

Bounds bounds(const Schema& phi, const std::string& v) {
  if (!occurs_var(phi, v))
    throw std::runtime_error("bounds: variable " + v + " does not occur");
  BinderMap bm;
  collect_binders(phi, bm);
  MinMax mm = minmax_var(v, bm);
  return {mm.min, mm.max};
}

ArithFormula interval_constraints(const std::vector<Schema>& phis) {
  std::vector<ArithFormula> parts;
  for (const auto& phi : phis) {
    BinderMap bm;
    collect_binders(phi, bm);
    for (const auto& [c, b] : bm.binders) {
      MinMax mm = minmax_var(c, bm);
      parts.push_back(ArithFormula::leq(mm.min, LinExpr::var(c)));
      parts.push_back(ArithFormula::leq(LinExpr::var(c), mm.max));
    }
  }
  return ArithFormula::conj(std::move(parts));
}

// ---------------------------------------------------------------------------
// Realization.

namespace {

Schema realize_impl(const Schema& s, std::map<std::string, Int>& env) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
      return s;
    case SchemaNode::Kind::Less:
      return s->lhs.eval(env) < s->rhs.eval(env) ? SchemaNode::top()
                                                 : SchemaNode::bot();
    case SchemaNode::Kind::Atom:
      return SchemaNode::atom(s->sym, LinExpr::constant(s->index.eval(env)),
                              s->positive);
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> xs;
      xs.reserve(s->items.size());
      for (const auto& x : s->items) xs.push_back(realize_impl(x, env));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(xs))
                                              : SchemaNode::disj(std::move(xs));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Int lo = s->lo.eval(env), hi = s->hi.eval(env);
      std::vector<Schema> xs;
      for (Int k = lo; k <= hi; ++k) {
        env[s->counter] = k;
        xs.push_back(realize_impl(s->body, env));
        env.erase(s->counter);
      }
      return s->kind == SchemaNode::Kind::BigAnd ? SchemaNode::conj(std::move(xs))
                                                 : SchemaNode::disj(std::move(xs));
    }
  }
  return s;
}

}  // namespace

Schema realize(const Schema& s, const Substitution& sigma) {
  std::map<std::string, Int> env;
  for (const auto& [v, e] : sigma) {
    if (!e.is_constant())
      throw std::runtime_error("realize: non-ground substitution for " + v);
    env[v] = e.constant_term();
  }
  for (const auto& v : free_vars(s)) {
    if (!env.count(v))
      throw std::runtime_error("realize: parameter " + v + " left unbound");
  }
  return realize_impl(s, env);
}

bool is_prop_formula(const Schema& s) {
  switch (s->kind) {
    case SchemaNode::Kind::Top:
    case SchemaNode::Kind::Bot:
      return true;
    case SchemaNode::Kind::Less:
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      return false;
    case SchemaNode::Kind::Atom:
      return s->index.is_constant();
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      return std::all_of(s->items.begin(), s->items.end(),
                         [](const Schema& x) { return is_prop_formula(x); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// Literal rewrite-system-S stepper (test support: exercises confluence).

namespace {

// Builds And/Or nodes without flattening or unit simplification.
Schema raw_pair(SchemaNode::Kind k, Schema a, Schema b) {
  auto n = make(k);
  n->items = {std::move(a), std::move(b)};
  return n;
}

// Returns the rewritten schema, or nullptr if no ground-bound iteration
// exists in this subtree. `inner_first` controls redex selection.
Schema s_step(const Schema& s, bool inner_first) {
  auto try_here = [&]() -> Schema {
    if (s->kind != SchemaNode::Kind::BigAnd && s->kind != SchemaNode::Kind::BigOr)
      return nullptr;
    if (!s->lo.is_constant() || !s->hi.is_constant()) return nullptr;
    const Int& lo = s->lo.constant_term();
    const Int& hi = s->hi.constant_term();
    if (hi < lo)
      return s->kind == SchemaNode::Kind::BigAnd ? SchemaNode::top()
                                                 : SchemaNode::bot();
    auto rest = make(s->kind);
    rest->counter = s->counter;
    rest->lo = s->lo;
    rest->hi = LinExpr::constant(hi - 1);
    rest->body = s->body;
    Schema peeled =
        subst_impl(s->body, Substitution{{s->counter, LinExpr::constant(hi)}});
    return raw_pair(s->kind == SchemaNode::Kind::BigAnd ? SchemaNode::Kind::And
                                                        : SchemaNode::Kind::Or,
                    rest, peeled);
  };

  auto recurse = [&]() -> Schema {
    switch (s->kind) {
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or: {
        for (size_t i = 0; i < s->items.size(); ++i) {
          Schema r = s_step(s->items[i], inner_first);
          if (r) {
            auto n = make(s->kind);
            n->items = s->items;
            n->items[i] = r;
            return n;
          }
        }
        return nullptr;
      }
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr: {
        Schema r = s_step(s->body, inner_first);
        if (r) {
          auto n = make(s->kind);
          n->counter = s->counter;
          n->lo = s->lo;
          n->hi = s->hi;
          n->body = r;
          return n;
        }
        return nullptr;
      }
      default:
        return nullptr;
    }
  };

  if (inner_first) {
    if (Schema r = recurse()) return r;
    return try_here();
  }
  if (Schema r = try_here()) return r;
  return recurse();
}

}  // namespace

Schema s_normalize_steps(const Schema& s, UnfoldOrder order) {
  Schema cur = s;
  while (true) {
    Schema next = s_step(cur, order == UnfoldOrder::InnermostFirst);
    if (!next) return cur;
    cur = next;
  }
}

std::string schema_str(const Schema& s) {
  std::ostringstream os;
  std::function<void(const Schema&, int)> go = [&](const Schema& x, int prec) {
    // prec: 0 = any, 1 = inside binary, 2 = unary operand
    switch (x->kind) {
      case SchemaNode::Kind::Top:
        os << "true";
        return;
      case SchemaNode::Kind::Bot:
        os << "false";
        return;
      case SchemaNode::Kind::Less:
        if (prec > 0) os << "(";
        os << x->lhs.str() << " < " << x->rhs.str();
        if (prec > 0) os << ")";
        return;
      case SchemaNode::Kind::Atom: {
        if (!x->positive) os << "~";
        os << x->sym << "_";
        if (x->index.is_constant() && x->index.constant_term() >= 0)
          os << x->index.constant_term().str();
        else if (!x->index.is_constant() && x->index.coeffs().size() == 1 &&
                 x->index.constant_term() == 0 &&
                 x->index.coeffs().begin()->second == 1)
          os << x->index.coeffs().begin()->first;
        else
          os << "{" << x->index.str() << "}";
        return;
      }
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or: {
        const char* op = x->kind == SchemaNode::Kind::And ? " /\\ " : " \\/ ";
        if (prec > 0) os << "(";
        for (size_t i = 0; i < x->items.size(); ++i) {
          if (i) os << op;
          go(x->items[i], 1);
        }
        if (prec > 0) os << ")";
        return;
      }
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr: {
        if (prec > 1) os << "(";
        os << (x->kind == SchemaNode::Kind::BigAnd ? "/\\" : "\\/");
        os << x->counter << "=" << x->lo.str() << ".." << x->hi.str() << " ";
        go(x->body, 2);
        if (prec > 1) os << ")";
        return;
      }
    }
  };
  go(s, 0);
  return os.str();
}

}  // namespace stab
