#include "stab/tau.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "stab/arith.hpp"

namespace stab {

namespace {

std::string path_str(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::ostringstream os;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) os << ".";
    os << path[i];
  }
  return os.str();
}

Schema replace_at_path(const Schema& s, const std::vector<int>& path, size_t pos,
                       const Schema& repl) {
  if (pos == path.size()) return repl;
  int idx = path[pos];
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> items = s->items;
      items[idx] = replace_at_path(items[idx], path, pos + 1, repl);
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(items))
                                              : SchemaNode::disj(std::move(items));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Schema body = replace_at_path(s->body, path, pos + 1, repl);
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(s->counter, s->lo, s->hi, std::move(body))
                 : SchemaNode::big_or(s->counter, s->lo, s->hi, std::move(body));
    }
    default:
      throw std::logic_error("replace_at_path: bad path");
  }
}

// Replaces all occurrences of `target` (syntactic equality); the replacement
// is generated per occurrence so duplicated bodies can get fresh counters.
Schema replace_all(const Schema& s, const Schema& target,
                   const std::function<Schema()>& repl) {
  if (schema_eq(s, target)) return repl();
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> items;
      items.reserve(s->items.size());
      for (const auto& x : s->items) items.push_back(replace_all(x, target, repl));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(items))
                                              : SchemaNode::disj(std::move(items));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Schema body = replace_all(s->body, target, repl);
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(s->counter, s->lo, s->hi, std::move(body))
                 : SchemaNode::big_or(s->counter, s->lo, s->hi, std::move(body));
    }
    default:
      return s;
  }
}

// Replaces the atom p_idx (both polarities) by a truth constant.
Schema replace_atom(const Schema& s, const std::string& sym, const LinExpr& idx,
                    bool value) {
  switch (s->kind) {
    case SchemaNode::Kind::Atom: {
      if (s->sym == sym && s->index == idx) {
        bool v = s->positive ? value : !value;
        return v ? SchemaNode::top() : SchemaNode::bot();
      }
      return s;
    }
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> items;
      items.reserve(s->items.size());
      for (const auto& x : s->items)
        items.push_back(replace_atom(x, sym, idx, value));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(items))
                                              : SchemaNode::disj(std::move(items));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Schema body = replace_atom(s->body, sym, idx, value);
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(s->counter, s->lo, s->hi, std::move(body))
                 : SchemaNode::big_or(s->counter, s->lo, s->hi, std::move(body));
    }
    default:
      return s;
  }
}

// NNF equivalence lhs <-> rhs.
Schema iff_schema(const Schema& lhs, const Schema& rhs) {
  return SchemaNode::conj({SchemaNode::disj({negate(lhs), rhs}),
                           SchemaNode::disj({lhs, negate(rhs)})});
}

// Unfolds every iteration with integer bounds (rewrite system S). Peeled
// copies get fresh counters.
Schema ground_unfold(const Schema& s, FreshNames& names, bool* changed) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      std::vector<Schema> items;
      items.reserve(s->items.size());
      for (const auto& x : s->items)
        items.push_back(ground_unfold(x, names, changed));
      return s->kind == SchemaNode::Kind::And ? SchemaNode::conj(std::move(items))
                                              : SchemaNode::disj(std::move(items));
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      Schema body = ground_unfold(s->body, names, changed);
      if (s->lo.is_constant() && s->hi.is_constant()) {
        *changed = true;
        std::vector<Schema> items;
        for (Int k = s->lo.constant_term(); k <= s->hi.constant_term(); ++k) {
          Schema inst = substitute_counter(body, s->counter, LinExpr::constant(k));
          items.push_back(refresh_counters(inst, names));
        }
        return s->kind == SchemaNode::Kind::BigAnd
                   ? SchemaNode::conj(std::move(items))
                   : SchemaNode::disj(std::move(items));
      }
      return s->kind == SchemaNode::Kind::BigAnd
                 ? SchemaNode::big_and(s->counter, s->lo, s->hi, std::move(body))
                 : SchemaNode::big_or(s->counter, s->lo, s->hi, std::move(body));
    }
    default:
      return s;
  }
}

struct IterInfo {
  Schema node;
  std::vector<int> path;
  std::vector<Schema> enclosing;  // outermost first
};

void collect_iterations(const Schema& s, std::vector<int>& path,
                        std::vector<Schema>& enclosing,
                        std::vector<IterInfo>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (size_t i = 0; i < s->items.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_iterations(s->items[i], path, enclosing, out);
        path.pop_back();
      }
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      out.push_back({s, path, enclosing});
      enclosing.push_back(s);
      path.push_back(0);
      collect_iterations(s->body, path, enclosing, out);
      path.pop_back();
      enclosing.pop_back();
      return;
    }
    default:
      return;
  }
}

std::vector<IterInfo> all_iterations(const Schema& s) {
  std::vector<IterInfo> out;
  std::vector<int> path;
  std::vector<Schema> enclosing;
  collect_iterations(s, path, enclosing, out);
  return out;
}

struct AtomOcc {
  Schema node;
  std::vector<Schema> enclosing;  // enclosing iterations, outermost first
  std::vector<int> enclosing_path_len;
  std::vector<int> path;
};

void collect_atoms(const Schema& s, std::vector<int>& path,
                   std::vector<Schema>& enclosing, std::vector<int>& enc_len,
                   std::vector<AtomOcc>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::Atom:
      out.push_back({s, enclosing, enc_len, path});
      return;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (size_t i = 0; i < s->items.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_atoms(s->items[i], path, enclosing, enc_len, out);
        path.pop_back();
      }
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      enclosing.push_back(s);
      enc_len.push_back(static_cast<int>(path.size()));
      path.push_back(0);
      collect_atoms(s->body, path, enclosing, enc_len, out);
      path.pop_back();
      enc_len.pop_back();
      enclosing.pop_back();
      return;
    default:
      return;
  }
}

std::vector<AtomOcc> all_atoms(const Schema& s) {
  std::vector<AtomOcc> out;
  std::vector<int> path;
  std::vector<Schema> enclosing;
  std::vector<int> enc_len;
  collect_atoms(s, path, enclosing, enc_len, out);
  return out;
}

std::optional<std::string> unique_param(const Schema& s) {
  auto fv = free_vars(s);
  if (fv.size() > 1)
    throw std::runtime_error("tau: schema has more than one parameter");
  if (fv.empty()) return std::nullopt;
  return *fv.begin();
}

struct Rewrite {
  Schema schema;
  std::string rule;
  std::string at;
};

// --- tau1: case split on an atom whose index lacks the iteration counter ---

std::optional<Rewrite> try_tau1(const Schema& global, FreshNames& names) {
  for (const auto& occ : all_atoms(global)) {
    if (occ.enclosing.empty()) continue;
    const LinExpr& e = occ.node->index;
    // the index may mention at most one counter (bound-linear)
    int target = -1;  // index into occ.enclosing: iteration to split
    int binder = -1;
    for (size_t l = 0; l < occ.enclosing.size(); ++l)
      if (e.mentions(occ.enclosing[l]->counter)) binder = static_cast<int>(l);
    if (binder == static_cast<int>(occ.enclosing.size()) - 1)
      continue;  // counter of the innermost iteration: nothing to do
    target = binder + 1;
    const Schema& it = occ.enclosing[target];
    // split `it` on the atom
    FreshNames local = names;
    Schema pos_body = replace_atom(it, occ.node->sym, e, true);
    Schema neg_body = replace_atom(it, occ.node->sym, e, false);
    pos_body = refresh_counters(pos_body, names);
    neg_body = refresh_counters(neg_body, names);
    Schema split = SchemaNode::disj(
        {SchemaNode::conj({SchemaNode::atom(occ.node->sym, e, true), pos_body}),
         SchemaNode::conj({SchemaNode::atom(occ.node->sym, e, false), neg_body})});
    std::vector<int> it_path(occ.path.begin(),
                             occ.path.begin() + occ.enclosing_path_len[target]);
    return Rewrite{replace_at_path(global, it_path, 0, split), "tau1",
                   path_str(it_path)};
  }
  return std::nullopt;
}

// --- tau2: name a nested iteration whose only free variable is n ---

std::optional<Rewrite> try_tau2(const Schema& global, FreshNames& names,
                                const std::optional<std::string>& param) {
  auto iters = all_iterations(global);
  // innermost-first: deepest path first
  std::stable_sort(iters.begin(), iters.end(),
                   [](const IterInfo& a, const IterInfo& b) {
                     return a.path.size() > b.path.size();
                   });
  for (const auto& info : iters) {
    if (info.enclosing.empty()) continue;
    auto fv = free_vars(info.node);
    bool only_param = true;
    for (const auto& v : fv)
      if (!param || v != *param) only_param = false;
    if (!only_param) continue;
    std::string p = names.fresh("r");
    Schema atom = SchemaNode::atom(p, LinExpr::constant(0), true);
    Schema pos_copy = refresh_counters(info.node, names);
    Schema neg_copy = negate(refresh_counters(info.node, names));
    Schema equiv = SchemaNode::conj({SchemaNode::disj({negate(atom), pos_copy}),
                                     SchemaNode::disj({atom, neg_copy})});
    Schema replaced =
        replace_all(global, info.node, [&]() { return atom; });
    return Rewrite{SchemaNode::conj({equiv, replaced}), "tau2",
                   path_str(info.path)};
  }
  return std::nullopt;
}

// --- tau3/tau3'/tau4/tau4': inductive encoding of iterations whose upper
// bound contains an enclosing counter ---

std::optional<Rewrite> try_tau34(const Schema& global, FreshNames& names,
                                 const std::optional<std::string>& param) {
  auto iters = all_iterations(global);
  std::stable_sort(iters.begin(), iters.end(),
                   [](const IterInfo& a, const IterInfo& b) {
                     return a.path.size() > b.path.size();
                   });
  for (const auto& info : iters) {
    if (info.enclosing.empty()) continue;
    // find the enclosing counter j in the upper bound
    std::string j;
    Int jcoef = 0;
    for (const auto& enc : info.enclosing) {
      Int c = info.node->hi.coeff(enc->counter);
      if (c != 0) {
        j = enc->counter;
        jcoef = c;
        break;
      }
    }
    if (j.empty()) continue;
    if (jcoef != 1 && jcoef != -1)
      throw std::runtime_error("tau: non-unit counter coefficient in bound");
    // remaining free variables must be only the parameter (and j)
    for (const auto& v : free_vars(info.node))
      if (v != j && (!param || v != *param))
        throw std::runtime_error("tau: stray free variable " + v +
                                 " in nested iteration");

    bool isOr = info.node->kind == SchemaNode::Kind::BigOr;
    const Schema body = info.node->body;
    const std::string i = info.node->counter;
    const LinExpr a = info.node->lo;
    Bounds jb = bounds(global, j);
    std::string r = names.fresh("r");
    std::string t = names.fresh("t");

    std::vector<Schema> parts;
    Schema replaced;
    std::string rule;
    if (jcoef == 1) {
      // upper = b + j
      LinExpr b = info.node->hi - LinExpr::var(j);
      LinExpr anchor = a - b - 1;
      rule = isOr ? "tau3" : "tau3'";
      // base: r pinned below a-b (false for \/, true for /\)
      parts.push_back(SchemaNode::atom(r, anchor, isOr ? false : true));
      parts.push_back(isOr ? SchemaNode::big_and(
                                 t, jb.min, anchor,
                                 SchemaNode::atom(r, LinExpr::var(t), false))
                           : SchemaNode::big_and(
                                 t, jb.min, anchor,
                                 SchemaNode::atom(r, LinExpr::var(t), true)));
      // recurrence on [a-b, max_j]
      Schema rt = SchemaNode::atom(r, LinExpr::var(t), true);
      Schema rt1 = SchemaNode::atom(r, LinExpr::var(t) - 1, true);
      Schema step = substitute_counter(body, i, b + LinExpr::var(t));
      Schema rhs = isOr ? SchemaNode::disj({rt1, step})
                        : SchemaNode::conj({rt1, step});
      parts.push_back(SchemaNode::big_and(names.fresh("t"), a - b, jb.max,
                                          iff_schema(rt, rhs)));
      // the iteration over t in iff_schema duplicates t: rebuild cleanly below
      parts.pop_back();
      std::string t2 = names.fresh(t);
      Schema rt_b = SchemaNode::atom(r, LinExpr::var(t2), true);
      Schema rt1_b = SchemaNode::atom(r, LinExpr::var(t2) - 1, true);
      Schema step_b = refresh_counters(
          substitute_counter(body, i, b + LinExpr::var(t2)), names);
      Schema rhs_b = isOr ? SchemaNode::disj({rt1_b, step_b})
                          : SchemaNode::conj({rt1_b, step_b});
      Schema equiv = SchemaNode::conj(
          {SchemaNode::disj({negate(rt_b), rhs_b}),
           SchemaNode::disj({rt_b, negate(refresh_counters(rhs_b, names))})});
      parts.push_back(SchemaNode::big_and(t2, a - b, jb.max, equiv));
      replaced = replace_all(global, info.node, [&]() {
        return SchemaNode::atom(r, LinExpr::var(j), true);
      });
    } else {
      // upper = b - j
      LinExpr b = info.node->hi + LinExpr::var(j);
      LinExpr anchor = b - a + 1;
      rule = isOr ? "tau4" : "tau4'";
      parts.push_back(SchemaNode::atom(r, anchor, isOr ? false : true));
      parts.push_back(SchemaNode::big_and(
          t, anchor, jb.max, SchemaNode::atom(r, LinExpr::var(t), !isOr)));
      std::string t2 = names.fresh(t);
      Schema rt_b = SchemaNode::atom(r, LinExpr::var(t2), true);
      Schema rt1_b = SchemaNode::atom(r, LinExpr::var(t2) + 1, true);
      Schema step_b = refresh_counters(
          substitute_counter(body, i, b - LinExpr::var(t2)), names);
      Schema rhs_b = isOr ? SchemaNode::disj({rt1_b, step_b})
                          : SchemaNode::conj({rt1_b, step_b});
      Schema equiv = SchemaNode::conj(
          {SchemaNode::disj({negate(rt_b), rhs_b}),
           SchemaNode::disj({rt_b, negate(refresh_counters(rhs_b, names))})});
      parts.push_back(SchemaNode::big_and(t2, jb.min, b - a, equiv));
      replaced = replace_all(global, info.node, [&]() {
        return SchemaNode::atom(r, LinExpr::var(j), true);
      });
    }
    parts.push_back(replaced);
    return Rewrite{SchemaNode::conj(std::move(parts)), rule, path_str(info.path)};
  }
  return std::nullopt;
}

// --- tau5: make the lower bound constant ---

std::optional<Rewrite> try_tau5(const Schema& global,
                                const std::optional<std::string>& param) {
  if (!param) return std::nullopt;
  for (const auto& info : all_iterations(global)) {
    Int alpha = info.node->lo.coeff(*param);
    if (alpha == 0) continue;
    LinExpr shift = LinExpr::var(*param, alpha);
    Schema body =
        substitute_counter(info.node->body, info.node->counter,
                           LinExpr::var(info.node->counter) + shift);
    LinExpr lo = info.node->lo - shift;
    LinExpr hi = info.node->hi - shift;
    Schema it = info.node->kind == SchemaNode::Kind::BigAnd
                    ? SchemaNode::big_and(info.node->counter, lo, hi, body)
                    : SchemaNode::big_or(info.node->counter, lo, hi, body);
    return Rewrite{replace_at_path(global, info.path, 0, it), "tau5",
                   path_str(info.path)};
  }
  return std::nullopt;
}

// Grounds the parameter to a constant and unfolds.
Schema realize_param(const Schema& global, const std::string& param, const Int& k,
                     FreshNames& names) {
  Schema g = substitute(global, {{param, LinExpr::constant(k)}});
  bool ch = false;
  g = ground_unfold(g, names, &ch);
  return g;
}

// --- tau6: eliminate iterations whose upper bound decreases in n ---

std::optional<Rewrite> try_tau6(const Schema& global, FreshNames& names,
                                const std::optional<std::string>& param) {
  if (!param) return std::nullopt;
  for (const auto& info : all_iterations(global)) {
    Int alpha = info.node->hi.coeff(*param);
    if (alpha >= 0) continue;
    if (!info.node->lo.is_constant())
      throw std::runtime_error("tau6: lower bound not constant");
    Int gamma = info.node->lo.constant_term();
    Int c = info.node->hi.constant_term();
    // nonempty iff alpha*n + c >= gamma iff n <= (gamma - c)/alpha
    Int kappa = floor_div(gamma - c, alpha);
    bool isAnd = info.node->kind == SchemaNode::Kind::BigAnd;
    Schema diamond = isAnd ? SchemaNode::top() : SchemaNode::bot();
    std::vector<Schema> disjuncts;
    for (Int t = 0; t <= kappa; ++t)
      disjuncts.push_back(realize_param(global, *param, t, names));
    Schema rest = replace_all(global, info.node, [&]() { return diamond; });
    disjuncts.push_back(SchemaNode::conj(
        {SchemaNode::less(LinExpr::constant(kappa), LinExpr::var(*param)), rest}));
    return Rewrite{SchemaNode::disj(std::move(disjuncts)), "tau6",
                   path_str(info.path)};
  }
  return std::nullopt;
}

// --- tau7: decompose upper bounds with coefficient > 1 ---

std::optional<Rewrite> try_tau7(const Schema& global, FreshNames& names,
                                const std::optional<std::string>& param) {
  if (!param) return std::nullopt;
  for (const auto& info : all_iterations(global)) {
    Int alpha = info.node->hi.coeff(*param);
    if (alpha <= 1) continue;
    if (!info.node->lo.is_constant())
      throw std::runtime_error("tau7: lower bound not constant");
    Int gamma = info.node->lo.constant_term();
    Int c = info.node->hi.constant_term();
    bool isAnd = info.node->kind == SchemaNode::Kind::BigAnd;
    const std::string i = info.node->counter;
    LinExpr mid = LinExpr::var(*param, alpha - 1) + c;  // (alpha-1)n + c

    auto make_psi_prime = [&]() {
      Schema first = isAnd ? SchemaNode::big_and(i, info.node->lo, mid,
                                                 info.node->body)
                           : SchemaNode::big_or(i, info.node->lo, mid,
                                                info.node->body);
      std::string i2 = names.fresh(i);
      Schema body2 = refresh_counters(
          substitute_counter(info.node->body, i, LinExpr::var(i2) + mid), names);
      Schema second =
          isAnd ? SchemaNode::big_and(i2, LinExpr::constant(1),
                                      LinExpr::var(*param), body2)
                : SchemaNode::big_or(i2, LinExpr::constant(1),
                                     LinExpr::var(*param), body2);
      // the two pieces share counters only if refreshed; `first` keeps i
      return isAnd ? SchemaNode::conj({first, second})
                   : SchemaNode::disj({first, second});
    };

    // cases n with (alpha-1)*n + c < gamma, i.e. n < (gamma-c)/(alpha-1)
    Int kappa = ceil_div(gamma - c, alpha - 1) - 1;
    std::vector<Schema> disjuncts;
    Schema guard = SchemaNode::less(LinExpr::constant(gamma - 1), mid);  // mid >= gamma
    bool first_occurrence = true;
    Schema replaced = replace_all(global, info.node, [&]() {
      if (first_occurrence) {
        first_occurrence = false;
        return make_psi_prime();
      }
      // later occurrences need their own counters
      FreshNames tmp = names;
      return refresh_counters(make_psi_prime(), names);
    });
    disjuncts.push_back(SchemaNode::conj({guard, replaced}));
    for (Int t = 0; t <= kappa; ++t)
      disjuncts.push_back(realize_param(global, *param, t, names));
    return Rewrite{SchemaNode::disj(std::move(disjuncts)), "tau7",
                   path_str(info.path)};
  }
  return std::nullopt;
}

// --- tau8: flip iterations whose body indices carry odd n coefficients ---

std::optional<Rewrite> try_tau8(const Schema& global,
                                const std::optional<std::string>& param) {
  if (!param) return std::nullopt;
  for (const auto& info : all_iterations(global)) {
    if (info.node->hi.coeff(*param) != 1 || !info.node->lo.is_constant())
      continue;
    std::vector<AtomOcc> atoms = all_atoms(info.node->body);
    if (atoms.empty()) continue;
    bool all_odd = true;
    for (const auto& occ : atoms) {
      Int a = occ.node->index.coeff(*param);
      if (pos_mod(a, 2) != 1) {
        all_odd = false;
        break;
      }
    }
    if (!all_odd) continue;
    Int gamma = info.node->lo.constant_term();
    Int beta = -info.node->hi.constant_term();  // upper = n - beta
    Schema body = substitute_counter(
        info.node->body, info.node->counter,
        LinExpr::var(*param) - LinExpr::var(info.node->counter));
    Schema it =
        info.node->kind == SchemaNode::Kind::BigAnd
            ? SchemaNode::big_and(info.node->counter, LinExpr::constant(beta),
                                  LinExpr::var(*param) - gamma, body)
            : SchemaNode::big_or(info.node->counter, LinExpr::constant(beta),
                                 LinExpr::var(*param) - gamma, body);
    return Rewrite{replace_at_path(global, info.path, 0, it), "tau8",
                   path_str(info.path)};
  }
  return std::nullopt;
}

// --- tau10: align all iterations on a common interval [alpha*, n-beta*] ---

std::optional<Rewrite> try_tau10(const Schema& global, FreshNames& names,
                                 const std::optional<std::string>& param) {
  if (!param) return std::nullopt;
  auto iters = all_iterations(global);
  if (iters.size() < 2) return std::nullopt;
  std::optional<Int> amax, bmax;
  for (const auto& info : iters) {
    if (!info.node->lo.is_constant() || info.node->hi.coeff(*param) != 1)
      throw std::runtime_error("tau10: iteration not in [alpha, n-beta] form");
    Int a = info.node->lo.constant_term();
    Int b = -info.node->hi.constant_term();
    if (!amax || a > *amax) amax = a;
    if (!bmax || b > *bmax) bmax = b;
  }
  for (const auto& info : iters) {
    Int a = info.node->lo.constant_term();
    Int b = -info.node->hi.constant_term();
    if (a == *amax && b == *bmax) continue;
    bool isAnd = info.node->kind == SchemaNode::Kind::BigAnd;
    const std::string i = info.node->counter;
    // peel the top rank and shift the lower bound to alpha*
    Schema peeled = refresh_counters(
        substitute_counter(info.node->body, i, LinExpr::var(*param) - b), names);
    Schema shifted_body = substitute_counter(
        info.node->body, i, LinExpr::var(i) + (a - *amax));
    LinExpr new_hi = LinExpr::var(*param) - b - 1 + *amax - a;
    Schema it2 = isAnd ? SchemaNode::big_and(i, LinExpr::constant(*amax), new_hi,
                                             shifted_body)
                       : SchemaNode::big_or(i, LinExpr::constant(*amax), new_hi,
                                            shifted_body);
    Schema unfolded = isAnd ? SchemaNode::conj({it2, peeled})
                            : SchemaNode::disj({it2, peeled});
    Schema low_case = SchemaNode::conj(
        {SchemaNode::less(LinExpr::var(*param), LinExpr::constant(a + b)),
         isAnd ? SchemaNode::top() : SchemaNode::bot()});
    Schema high_case = SchemaNode::conj(
        {SchemaNode::less(LinExpr::constant(a + b - 1), LinExpr::var(*param)),
         unfolded});
    Schema repl = SchemaNode::disj({low_case, high_case});
    return Rewrite{replace_at_path(global, info.path, 0, repl), "tau10",
                   path_str(info.path)};
  }
  return std::nullopt;
}

Int max_natural(const Schema& s) {
  Int m = 0;
  auto see = [&](const LinExpr& e) {
    if (abs(e.constant_term()) > m) m = abs(e.constant_term());
    for (const auto& [v, c] : e.coeffs())
      if (abs(c) > m) m = abs(c);
  };
  std::function<void(const Schema&)> go = [&](const Schema& x) {
    switch (x->kind) {
      case SchemaNode::Kind::Less:
        see(x->lhs);
        see(x->rhs);
        return;
      case SchemaNode::Kind::Atom:
        see(x->index);
        return;
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or:
        for (const auto& y : x->items) go(y);
        return;
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr:
        see(x->lo);
        see(x->hi);
        go(x->body);
        return;
      default:
        return;
    }
  };
  go(s);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// normalize_even

Schema normalize_even(const Schema& phi) {
  ClassReport rep = classify(phi);
  if (!rep.is_bound_linear)
    throw std::runtime_error("normalize_even: schema is not bound-linear (" +
                             rep.bound_linear_violation + ")");
  auto fv = free_vars(phi);
  if (fv.empty()) return phi;
  const std::string n = *fv.begin();

  bool even = true;
  std::function<void(const Schema&)> chk = [&](const Schema& s) {
    auto see = [&](const LinExpr& e) {
      if (pos_mod(e.coeff(n), 2) != 0) even = false;
    };
    switch (s->kind) {
      case SchemaNode::Kind::Less:
        see(s->lhs);
        see(s->rhs);
        return;
      case SchemaNode::Kind::Atom:
        see(s->index);
        return;
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or:
        for (const auto& x : s->items) chk(x);
        return;
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr:
        see(s->lo);
        see(s->hi);
        chk(s->body);
        return;
      default:
        return;
    }
  };
  chk(phi);
  if (even) return phi;

  FreshNames names;
  names.reserve_all(phi);
  Schema left = substitute(phi, {{n, LinExpr::var(n, 2)}});
  Schema right = substitute(phi, {{n, LinExpr::var(n, 2) + 1}});
  left = refresh_counters(left, names);
  right = refresh_counters(right, names);
  return SchemaNode::disj({left, right});
}

// ---------------------------------------------------------------------------
// tau9 renaming and the relevant equivalence set

namespace {

struct RenameState {
  RenamedAtomTable table;
  FreshNames* names;
  std::string param;

  Schema rename(const Schema& s) {
    switch (s->kind) {
      case SchemaNode::Kind::Atom: {
        const LinExpr& e = s->index;
        Int coef = e.coeff(param);
        if (pos_mod(coef, 2) != 0)
          throw std::runtime_error("tau9: odd parameter coefficient in index");
        Int alpha = coef / 2;
        LinExpr rest = e - LinExpr::var(param, coef);
        // rest = beta*i + delta with beta in {-1,0,1}, or a constant
        bool plus;
        LinExpr sub;
        Int icoef = 0;
        for (const auto& [v, c] : rest.coeffs()) icoef = c;
        if (icoef > 0 || (icoef == 0 && rest.constant_term() >= 0)) {
          plus = true;
          sub = rest;
        } else {
          plus = false;
          sub = -rest;
        }
        auto key = std::make_tuple(s->sym, alpha.str(), plus);
        auto it = table.key_to_fresh.find(key);
        std::string fresh;
        if (it != table.key_to_fresh.end()) {
          fresh = it->second;
        } else {
          fresh = names->fresh(s->sym + "#" + (plus ? "p" : "m") + alpha.str());
          table.key_to_fresh[key] = fresh;
          table.fresh_to_source[fresh] = {s->sym, alpha, plus};
        }
        return SchemaNode::atom(fresh, sub, s->positive);
      }
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or: {
        std::vector<Schema> items;
        for (const auto& x : s->items) items.push_back(rename(x));
        return s->kind == SchemaNode::Kind::And
                   ? SchemaNode::conj(std::move(items))
                   : SchemaNode::disj(std::move(items));
      }
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr: {
        Schema body = rename(s->body);
        return s->kind == SchemaNode::Kind::BigAnd
                   ? SchemaNode::big_and(s->counter, s->lo, s->hi, body)
                   : SchemaNode::big_or(s->counter, s->lo, s->hi, body);
      }
      default:
        return s;
    }
  }
};

// Possible-occurrence condition for a renamed atom with subscript value `a`
// (Lemma 2.8: realized subscripts stay within the counter intervals).
ArithFormula occurs_formula(const Schema& phi_bar, const std::string& fresh,
                            const LinExpr& a, const std::string& param) {
  std::vector<ArithFormula> cases;
  for (const auto& occ : all_atoms(phi_bar)) {
    if (occ.node->sym != fresh) continue;
    const LinExpr& sub = occ.node->index;
    std::string counter;
    for (const auto& [v, c] : sub.coeffs())
      if (v != param) counter = v;
    if (counter.empty()) {
      cases.push_back(ArithFormula::eq(a, sub));
    } else {
      Bounds b = bounds(phi_bar, counter);
      LinExpr delta = sub - LinExpr::var(counter);
      cases.push_back(ArithFormula::conj({ArithFormula::leq(b.min + delta, a),
                                          ArithFormula::leq(a, b.max + delta)}));
    }
  }
  return ArithFormula::disj(std::move(cases));
}

std::vector<Schema> relevant_equivalences_impl(const Schema& phi_bar,
                                               const RenamedAtomTable& table,
                                               const Int& iota,
                                               const std::string& param) {
  // candidate subscripts: integers in [-2i, 6i] and n + gamma, gamma in [-2i, 2i]
  std::vector<LinExpr> cands;
  for (Int c = -2 * iota; c <= 6 * iota; ++c) cands.push_back(LinExpr::constant(c));
  if (!param.empty())
    for (Int g = -2 * iota; g <= 2 * iota; ++g)
      cands.push_back(LinExpr::var(param) + g);

  // group the table entries by source symbol
  std::map<std::string, std::vector<std::pair<std::string, RenamedAtom>>> by_src;
  for (const auto& [fresh, info] : table.fresh_to_source)
    by_src[info.source].push_back({fresh, info});

  std::set<std::string> nonneg;
  if (!param.empty()) nonneg.insert(param);

  std::vector<Schema> out;
  for (const auto& [src, entries] : by_src) {
    for (size_t x = 0; x < entries.size(); ++x) {
      for (size_t y = x; y < entries.size(); ++y) {
        const auto& [f1, e1] = entries[x];
        const auto& [f2, e2] = entries[y];
        for (const auto& a : cands) {
          for (const auto& b : cands) {
            if (x == y && !(a < b)) continue;  // unordered pair, skip identical
            // source index expressions: 2*alpha*n +- a  =  2*beta*n +- b
            LinExpr lhsv = LinExpr::var(param, e1.alpha * 2) + (e1.plus ? a : -a);
            LinExpr rhsv = LinExpr::var(param, e2.alpha * 2) + (e2.plus ? b : -b);
            LinExpr diff = lhsv - rhsv;
            // guard solvable for some natural n?
            Int nc = param.empty() ? Int(0) : diff.coeff(param);
            LinExpr rest = diff - LinExpr::var(param, nc);
            if (nc == 0) {
              if (rest.constant_term() != 0) continue;
            } else {
              Int num = -rest.constant_term();
              if (pos_mod(num, nc) != 0) continue;
              if (num / nc < 0) continue;
            }
            ArithFormula guard = ArithFormula::eq(lhsv, rhsv);
            ArithFormula occ = ArithFormula::conj(
                {occurs_formula(phi_bar, f1, a, param),
                 occurs_formula(phi_bar, f2, b, param)});
            if (!lia_sat(ArithFormula::conj({guard, occ}), nonneg)) continue;
            Schema xatom = SchemaNode::atom(f1, a, true);
            Schema yatom = SchemaNode::atom(f2, b, true);
            Schema impl = SchemaNode::disj(
                {SchemaNode::from_arith(guard.negate()), iff_schema(xatom, yatom)});
            out.push_back(impl);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), SchemaLess{});
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Schema& a, const Schema& b) {
                          return schema_eq(a, b);
                        }),
            out.end());
  return out;
}

}  // namespace

Tau9Result tau9_rename(const Schema& phi, FreshNames& names) {
  auto fv = free_vars(phi);
  std::string param = fv.empty() ? "" : *fv.begin();
  Int iota = max_natural(phi);

  RenameState st;
  st.names = &names;
  st.param = param;
  Schema renamed = st.rename(phi);
  std::vector<Schema> psi =
      relevant_equivalences_impl(renamed, st.table, iota, param);
  return {renamed, st.table, psi};
}

std::vector<Schema> relevant_equivalences(const Schema& phi_bar,
                                          const RenamedAtomTable& table) {
  auto fv = free_vars(phi_bar);
  std::string param = fv.empty() ? "" : *fv.begin();
  Int iota = max_natural(phi_bar);
  for (const auto& [fresh, info] : table.fresh_to_source)
    if (abs(info.alpha) * 2 > iota) iota = abs(info.alpha) * 2;
  return relevant_equivalences_impl(phi_bar, table, iota, param);
}

// ---------------------------------------------------------------------------
// the driver

TauResult tau_transform(const Schema& phi) {
  ClassReport rep = classify(phi);
  if (!rep.is_bound_linear)
    throw std::runtime_error("tau_transform: input is not bound-linear (" +
                             rep.bound_linear_violation + ")");

  FreshNames names;
  names.reserve_all(phi);
  TauResult res;
  res.schema = phi;
  auto param = unique_param(phi);
  bool tau9_done = false;

  auto note = [&](const std::string& rule, const std::string& at) {
    res.trace.push_back("RULE " + rule + " AT " + at + " -> " +
                        std::to_string(schema_size(res.schema)));
  };

  const int step_budget = 200000;
  for (int steps = 0; steps < step_budget; ++steps) {
    bool ch = false;
    Schema unfolded = ground_unfold(res.schema, names, &ch);
    if (ch) {
      res.schema = unfolded;
      note("unfold", "-");
      continue;
    }
    param = unique_param(res.schema);
    if (auto r = try_tau1(res.schema, names)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau2(res.schema, names, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau34(res.schema, names, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau5(res.schema, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau6(res.schema, names, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau7(res.schema, names, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (auto r = try_tau8(res.schema, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    if (!tau9_done && contains_iteration(res.schema)) {
      Tau9Result t9 = tau9_rename(res.schema, names);
      std::vector<Schema> parts{t9.renamed};
      for (const auto& e : t9.equivalences) parts.push_back(e);
      res.schema = SchemaNode::conj(std::move(parts));
      res.table = t9.table;
      tau9_done = true;
      note("tau9", "root");
      continue;
    }
    if (auto r = try_tau10(res.schema, names, param)) {
      res.schema = r->schema;
      note(r->rule, r->at);
      continue;
    }
    return res;
  }
  throw std::runtime_error("tau_transform: rewrite budget exceeded");
}

}  // namespace stab
