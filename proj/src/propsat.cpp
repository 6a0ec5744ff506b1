#include "stab/propsat.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace stab {

std::optional<std::vector<bool>> dpll(const std::vector<std::vector<int>>& clauses,
                                      int nvars) {
  // 0 = unassigned, 1 = true, -1 = false
  std::vector<int> assign(nvars + 1, 0);

  std::function<bool()> solve = [&]() -> bool {
    // Unit propagation to fixpoint.
    std::vector<int> trail;
    while (true) {
      bool changed = false;
      for (const auto& c : clauses) {
        int unassigned = 0, unit = 0;
        bool sat = false;
        for (int lit : c) {
          int v = std::abs(lit);
          if (assign[v] == 0) {
            ++unassigned;
            unit = lit;
          } else if ((assign[v] > 0) == (lit > 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) {
          for (int v : trail) assign[v] = 0;
          return false;  // conflict
        }
        if (unassigned == 1) {
          assign[std::abs(unit)] = unit > 0 ? 1 : -1;
          trail.push_back(std::abs(unit));
          changed = true;
        }
      }
      if (!changed) break;
    }
    int pick = 0;
    for (int v = 1; v <= nvars; ++v) {
      if (assign[v] == 0) {
        pick = v;
        break;
      }
    }
    if (pick == 0) return true;
    for (int ph : {-1, 1}) {  // try false first
      assign[pick] = ph;
      if (solve()) return true;
      assign[pick] = 0;
    }
    for (int v : trail) assign[v] = 0;
    return false;
  };

  if (!solve()) return std::nullopt;
  std::vector<bool> out(nvars + 1, false);
  for (int v = 1; v <= nvars; ++v) out[v] = assign[v] > 0;
  return out;
}

namespace {

struct Clausifier {
  std::map<std::pair<std::string, Int>, int> var_ids;
  int next_id = 0;
  std::vector<std::vector<int>> clauses;

  int source_var(const std::string& sym, const Int& idx) {
    auto key = std::make_pair(sym, idx);
    auto it = var_ids.find(key);
    if (it != var_ids.end()) return it->second;
    int id = ++next_id;
    var_ids.emplace(key, id);
    return id;
  }

  int fresh_var() { return ++next_id; }

  // Returns a literal equivalent to the subformula, introducing definitional
  // variables for non-literal nodes. Constants return 0 sentinel handled by
  // callers (the root is special-cased).
  int tseitin(const Schema& s) {
    switch (s->kind) {
      case SchemaNode::Kind::Atom: {
        int v = source_var(s->sym, s->index.constant_term());
        return s->positive ? v : -v;
      }
      case SchemaNode::Kind::And: {
        std::vector<int> lits;
        lits.reserve(s->items.size());
        for (const auto& x : s->items) lits.push_back(tseitin(x));
        int d = fresh_var();
        std::vector<int> big{d};
        for (int l : lits) {
          clauses.push_back({-d, l});
          big.push_back(-l);
        }
        clauses.push_back(big);
        return d;
      }
      case SchemaNode::Kind::Or: {
        std::vector<int> lits;
        lits.reserve(s->items.size());
        for (const auto& x : s->items) lits.push_back(tseitin(x));
        int d = fresh_var();
        std::vector<int> big{-d};
        for (int l : lits) {
          clauses.push_back({d, -l});
          big.push_back(l);
        }
        clauses.push_back(big);
        return d;
      }
      default:
        throw std::logic_error("tseitin: not a ground propositional formula");
    }
  }

  // Asserts the formula at the root without introducing a definition for
  // the outermost connective (keeps e.g. a plain disjunction one clause).
  void assert_root(const Schema& s) {
    switch (s->kind) {
      case SchemaNode::Kind::Top:
        return;
      case SchemaNode::Kind::Bot:
        clauses.push_back({});
        return;
      case SchemaNode::Kind::Atom:
        clauses.push_back({tseitin(s)});
        return;
      case SchemaNode::Kind::And:
        for (const auto& x : s->items) assert_root(x);
        return;
      case SchemaNode::Kind::Or: {
        std::vector<int> cl;
        for (const auto& x : s->items) cl.push_back(tseitin(x));
        clauses.push_back(cl);
        return;
      }
      default:
        throw std::logic_error("assert_root: not a ground propositional formula");
    }
  }
};

}  // namespace

ClausifyResult clausify(const Schema& f) {
  if (!is_prop_formula(f))
    throw std::logic_error("clausify: input is not a propositional formula");
  Clausifier cl;
  cl.assert_root(f);
  ClausifyResult out;
  out.clauses = std::move(cl.clauses);
  out.nvars = cl.next_id;
  out.var_ids = std::move(cl.var_ids);
  out.source_vars.resize(out.var_ids.size());
  {
    std::vector<std::pair<std::pair<std::string, Int>, int>> items(
        out.var_ids.begin(), out.var_ids.end());
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    out.source_vars.clear();
    for (const auto& [k, id] : items) out.source_vars.push_back(k);
  }
  return out;
}

std::optional<PropAssignment> prop_sat(const Schema& f) {
  ClausifyResult cl = clausify(f);
  auto model = dpll(cl.clauses, cl.nvars);
  if (!model) return std::nullopt;
  PropAssignment out;
  for (const auto& [key, id] : cl.var_ids) out[key] = (*model)[id];
  return out;
}

std::optional<EnumResult> naive_enumerate(const Schema& s, const Int& max_param) {
  std::set<std::string> params = free_vars(s);
  std::vector<std::string> order(params.begin(), params.end());
  const size_t k = order.size();

  if (k == 0) {
    Schema inst = realize(s, {});
    auto m = prop_sat(inst);
    if (!m) return std::nullopt;
    return EnumResult{{}, *m};
  }

  // Enumerate by increasing sum, lexicographic tie-break.
  const Int cap = max_param * Int(k);
  for (Int total = 0; total <= cap; ++total) {
    std::vector<Int> vals(k, 0);
    std::function<std::optional<EnumResult>(size_t, Int)> go =
        [&](size_t pos, Int rest) -> std::optional<EnumResult> {
      if (pos + 1 == k) {
        if (rest > max_param) return std::nullopt;
        vals[pos] = rest;
        Substitution sigma;
        IntAssignment pa;
        for (size_t i = 0; i < k; ++i) {
          sigma[order[i]] = LinExpr::constant(vals[i]);
          pa[order[i]] = vals[i];
        }
        Schema inst = realize(s, sigma);
        auto m = prop_sat(inst);
        if (!m) return std::nullopt;
        return EnumResult{pa, *m};
      }
      for (Int v = 0; v <= std::min(rest, max_param); ++v) {
        vals[pos] = v;
        auto r = go(pos + 1, rest - v);
        if (r) return r;
      }
      return std::nullopt;
    };
    auto r = go(0, total);
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace stab
