#include "stab/engine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "stab/propsat.hpp"

namespace stab {

std::string Shift::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, d] : dec) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << v;
    if (d > 0) os << "-" << d.str();
  }
  return os.str();
}

std::string ProofStats::block_str() const {
  std::ostringstream os;
  os << "Applications of tableau rules:\n";
  os << "/\\ : " << and_rule << "\n";
  os << "\\/ : " << or_rule << "\n";
  os << "Iterated /\\ : " << iter_and << "\n";
  os << "Iterated \\/ : " << iter_or << "\n";
  os << "Closure : " << closure << "\n";
  os << "Number of closed leaves: " << closed_leaves << "\n";
  os << "Number of looping leaves: " << looping_leaves << "\n";
  os << "Number of lemmas: " << lemmas << "\n";
  os << "Maximum number of unfoldings: " << max_unfold << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// U(phi, psi)

namespace {

ArithFormula unif_impl(const Schema& a, const Schema& b, int depth) {
  using K = SchemaNode::Kind;
  if (a->kind != b->kind) return ArithFormula::ff();
  switch (a->kind) {
    case K::Top:
    case K::Bot:
      return ArithFormula::tt();
    case K::Less:
      return ArithFormula::conj({ArithFormula::eq(a->lhs, b->lhs),
                                 ArithFormula::eq(a->rhs, b->rhs)});
    case K::Atom:
      if (a->sym != b->sym || a->positive != b->positive)
        return ArithFormula::ff();
      return ArithFormula::eq(a->index, b->index);
    case K::And:
    case K::Or: {
      if (a->items.size() != b->items.size()) return ArithFormula::ff();
      std::vector<ArithFormula> parts;
      for (size_t i = 0; i < a->items.size(); ++i) {
        parts.push_back(unif_impl(a->items[i], b->items[i], depth));
        if (parts.back().is_false()) return ArithFormula::ff();
      }
      return ArithFormula::conj(std::move(parts));
    }
    case K::BigAnd:
    case K::BigOr: {
      // compare bodies under a shared fresh counter
      std::string k = "#u" + std::to_string(depth);
      Schema ba = substitute_counter(a->body, a->counter, LinExpr::var(k));
      Schema bb = substitute_counter(b->body, b->counter, LinExpr::var(k));
      ArithFormula rec = unif_impl(ba, bb, depth + 1);
      if (rec.is_false()) return ArithFormula::ff();
      return ArithFormula::conj({ArithFormula::eq(a->lo, b->lo),
                                 ArithFormula::eq(a->hi, b->hi), rec});
    }
  }
  return ArithFormula::ff();
}

}  // namespace

ArithFormula unif_formula(const Schema& phi, const Schema& psi) {
  return unif_impl(phi, psi, 0);
}

// ---------------------------------------------------------------------------
// purity

namespace {

ArithFormula phi_n(const std::vector<Schema>& phis) {
  std::vector<ArithFormula> parts;
  for (const auto& f : phis)
    if (is_arithmetic(f)) parts.push_back(to_arith(f));
  return ArithFormula::conj(std::move(parts));
}

void complementary_indices(const Schema& s, const std::string& sym,
                           bool complement_positive, std::vector<LinExpr>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::Atom:
      if (s->sym == sym && s->positive == complement_positive)
        out.push_back(s->index);
      return;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      for (const auto& x : s->items)
        complementary_indices(x, sym, complement_positive, out);
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      complementary_indices(s->body, sym, complement_positive, out);
      return;
    default:
      return;
  }
}

// Global memo for solver queries issued by the engine (keyed by formula
// text; branch constraint sets recur heavily during loop detection).
struct SolverCache {
  std::unordered_map<std::string, bool> sat;

  bool is_sat(const ArithFormula& f, const std::set<std::string>& nonneg) {
    std::string key = f.str();
    key += '|';
    for (const auto& v : nonneg) {
      key += v;
      key += ',';
    }
    auto it = sat.find(key);
    if (it != sat.end()) return it->second;
    bool r = lia_sat(f, nonneg).has_value();
    sat.emplace(std::move(key), r);
    return r;
  }
};

SolverCache& cache() {
  thread_local SolverCache c;
  return c;
}

bool pure_impl(const Schema& lit, const std::vector<Schema>& phis,
               const std::set<std::string>& params) {
  ArithFormula constraints = phi_n(phis);
  ArithFormula ic = interval_constraints(phis);
  std::vector<LinExpr> occs;
  for (const auto& f : phis)
    complementary_indices(f, lit->sym, !lit->positive, occs);
  for (const auto& b : occs) {
    ArithFormula q = ArithFormula::conj(
        {constraints, ic, ArithFormula::eq(lit->index, b)});
    if (cache().is_sat(q, params)) return false;
  }
  return true;
}

}  // namespace

bool is_pure_literal(const Schema& lit, const std::vector<Schema>& phis,
                     const std::set<std::string>& params) {
  if (lit->kind != SchemaNode::Kind::Atom)
    throw std::logic_error("is_pure_literal: not a literal");
  return pure_impl(lit, phis, params);
}

// ---------------------------------------------------------------------------
// looping

namespace {

// Shift-invariant skeleton: connective structure, symbols, polarities and
// variable coefficients, ignoring integer constants (a shift only changes
// constants).
void skeleton(const Schema& s, std::string& out) {
  auto expr = [&](const LinExpr& e) {
    for (const auto& [v, c] : e.coeffs()) {
      out += v;
      out += ':';
      out += c.str();
      out += ';';
    }
  };
  switch (s->kind) {
    case SchemaNode::Kind::Top: out += 'T'; return;
    case SchemaNode::Kind::Bot: out += 'F'; return;
    case SchemaNode::Kind::Less:
      out += '<';
      expr(s->lhs);
      out += '/';
      expr(s->rhs);
      return;
    case SchemaNode::Kind::Atom:
      out += s->positive ? 'a' : 'n';
      out += s->sym;
      out += '[';
      expr(s->index);
      out += ']';
      return;
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or:
      out += s->kind == SchemaNode::Kind::And ? '&' : '|';
      out += '(';
      for (const auto& x : s->items) skeleton(x, out);
      out += ')';
      return;
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr:
      out += s->kind == SchemaNode::Kind::BigAnd ? 'A' : 'E';
      out += '(';
      skeleton(s->body, out);
      out += ')';
      return;
  }
}

std::string skeleton_of(const Schema& s) {
  std::string out;
  skeleton(s, out);
  return out;
}

}  // namespace

std::optional<Shift> loop_check(const std::vector<Schema>& bud,
                                const std::vector<Schema>& companion,
                                int max_shift,
                                const std::set<std::string>& params,
                                bool pure_literal_enabled) {
  if (max_shift < 1) return std::nullopt;
  // parameters occurring in either set
  std::set<std::string> present;
  for (const auto& f : bud) collect_free_vars(f, present);
  for (const auto& f : companion) collect_free_vars(f, present);
  std::vector<std::string> ps;
  for (const auto& p : present)
    if (params.count(p)) ps.push_back(p);
  if (ps.empty()) return std::nullopt;

  ArithFormula bud_n = phi_n(bud);

  // quick skeleton filter: every non-literal companion formula must have a
  // structurally matching bud formula (a shift only changes constants)
  std::set<std::string> bud_skeletons;
  for (const auto& f : bud) bud_skeletons.insert(skeleton_of(f));
  std::vector<const Schema*> to_match;
  std::vector<const Schema*> arith;
  std::vector<const Schema*> literals;
  for (const auto& f : companion) {
    if (is_arithmetic(f))
      arith.push_back(&f);
    else if (is_literal(f))
      literals.push_back(&f);
    else {
      if (!bud_skeletons.count(skeleton_of(f))) return std::nullopt;
      to_match.push_back(&f);
    }
  }

  // pure literals of the companion set can be dropped up front
  std::vector<const Schema*> hard_literals;
  for (const auto* l : literals) {
    if (pure_literal_enabled && pure_impl(*l, companion, params)) continue;
    std::string sk = skeleton_of(*l);
    if (!bud_skeletons.count(sk)) return std::nullopt;
    hard_literals.push_back(l);
  }

  // enumerate shift vectors by increasing total decrement
  std::vector<Shift> shifts;
  if (ps.size() == 1) {
    for (int d = 1; d <= max_shift; ++d) {
      Shift s;
      s.dec[ps[0]] = d;
      shifts.push_back(s);
    }
  } else {
    for (int total = 1;
         total <= max_shift * static_cast<int>(ps.size()) &&
         shifts.size() < 256;
         ++total) {
      std::function<void(size_t, int, Shift&)> go = [&](size_t i, int rest,
                                                        Shift& acc) {
        if (shifts.size() >= 256) return;
        if (i + 1 == ps.size()) {
          if (rest > max_shift) return;
          acc.dec[ps[i]] = rest;
          shifts.push_back(acc);
          return;
        }
        for (int v = 0; v <= std::min(rest, max_shift); ++v) {
          acc.dec[ps[i]] = v;
          go(i + 1, rest - v, acc);
        }
      };
      Shift acc;
      go(0, total, acc);
    }
  }

  for (const auto& shift : shifts) {
    Substitution sigma;
    for (const auto& [v, d] : shift.dec) sigma[v] = LinExpr::var(v) - d;
    bool ok = true;
    for (const auto* f : arith) {
      ArithFormula shifted = to_arith(*f).subst(sigma);
      ArithFormula q = ArithFormula::conj({bud_n, shifted.negate()});
      if (cache().is_sat(q, params)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto member_after_shift = [&](const Schema& psi) {
      Schema shifted = substitute(psi, sigma);
      for (const auto& phi : bud) {
        if (skeleton_of(phi) != skeleton_of(shifted)) continue;
        ArithFormula u = unif_formula(phi, shifted);
        if (u.is_false()) continue;
        ArithFormula q = u.negate();
        if (!cache().is_sat(q, params)) return true;  // valid
      }
      return false;
    };
    for (const auto* f : hard_literals) {
      if (!member_after_shift(*f)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto* f : to_match) {
      if (!member_after_shift(*f)) {
        ok = false;
        break;
      }
    }
    if (ok) return shift;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// the tableau engine

namespace {

std::vector<Schema> sorted_set(std::vector<Schema> fms) {
  std::vector<Schema> out;
  for (auto& f : fms) {
    if (f->kind == SchemaNode::Kind::Top) continue;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), SchemaLess{});
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Schema& a, const Schema& b) {
                          return schema_eq(a, b);
                        }),
            out.end());
  return out;
}

std::vector<Schema> without(const std::vector<Schema>& fms, const Schema& f) {
  std::vector<Schema> out;
  for (const auto& x : fms)
    if (!schema_eq(x, f)) out.push_back(x);
  return out;
}

std::string diseq_key(const LinExpr& a, const LinExpr& b) {
  LinExpr d = a - b;
  LinExpr nd = -d;
  return d < nd ? d.str() : nd.str();
}

struct Engine {
  Limits limits;
  std::set<std::string> params;
  ProofStats stats;
  std::vector<NodeRec> nodes;
  std::vector<int> expanded_order;
  FreshNames names;
  long created = 0;
  bool budget_hit = false;

  int new_node(int parent, std::vector<Schema> fms, int unfold,
               const std::string& rule, const std::set<std::string>& diseq) {
    NodeRec n;
    n.id = static_cast<int>(nodes.size());
    n.parent = parent;
    n.formulas = sorted_set(std::move(fms));
    n.unfold_count = unfold;
    n.rule = rule;
    n.emitted_diseq = diseq;
    if (unfold > stats.max_unfold) stats.max_unfold = unfold;
    nodes.push_back(std::move(n));
    if (parent >= 0) nodes[parent].children.push_back(nodes.back().id);
    ++created;
    return nodes.back().id;
  }

  bool store_sat(const std::vector<Schema>& fms) {
    return cache().is_sat(phi_n(fms), params);
  }

  // first And / Or that is not an arithmetic constraint
  Schema find_connective(const std::vector<Schema>& fms, SchemaNode::Kind k) {
    for (const auto& f : fms)
      if (f->kind == k && !is_arithmetic(f)) return f;
    return nullptr;
  }

  struct ClosurePick {
    Schema pos, neg;
    std::string key;
  };
  std::optional<ClosurePick> find_closure(const NodeRec& node) {
    for (const auto& p : node.formulas) {
      if (p->kind != SchemaNode::Kind::Atom || !p->positive) continue;
      for (const auto& q : node.formulas) {
        if (q->kind != SchemaNode::Kind::Atom || q->positive) continue;
        if (q->sym != p->sym) continue;
        std::string key = p->sym + "/" + diseq_key(p->index, q->index);
        if (node.emitted_diseq.count(key)) continue;
        return ClosurePick{p, q, key};
      }
    }
    return std::nullopt;
  }

  // iterations of maximal length, leftmost in canonical order
  Schema find_iteration(const std::vector<Schema>& fms) {
    std::vector<Schema> iters;
    for (const auto& f : fms)
      if (f->kind == SchemaNode::Kind::BigAnd ||
          f->kind == SchemaNode::Kind::BigOr)
        iters.push_back(f);
    if (iters.empty()) return nullptr;
    auto strictly_longer = [](const Schema& x, const Schema& y) {
      LinExpr d = (x->hi - x->lo) - (y->hi - y->lo);
      return d.is_constant() && d.constant_term() > 0;
    };
    for (const auto& cand : iters) {
      bool maximal = true;
      for (const auto& other : iters) {
        if (strictly_longer(other, cand)) {
          maximal = false;
          break;
        }
      }
      if (maximal) return cand;
    }
    return iters.front();
  }

  // Blocked-leaf detection against every previously expanded node.
  bool try_block(NodeRec& leaf) {
    int ms = limits.max_shift > 0 ? limits.max_shift : leaf.unfold_count;
    if (ms < 1) return false;
    for (int cid : expanded_order) {
      if (cid == leaf.id) continue;
      auto sh = loop_check(leaf.formulas, nodes[cid].formulas, ms, params,
                           limits.pure_literal);
      if (sh) {
        leaf.status = NodeStatus::Blocked;
        leaf.companion = cid;
        leaf.shift = *sh;
        ++stats.looping_leaves;
        return true;
      }
    }
    return false;
  }

  // Expands one leaf; pushes children onto the DFS stack.
  // Returns a model if an irreducible open leaf is reached.
  std::optional<Interpretation> visit(int id, std::vector<int>& stack) {
    NodeRec& node = nodes[id];
    if (!store_sat(node.formulas)) {
      node.status = NodeStatus::Closed;
      ++stats.closed_leaves;
      return std::nullopt;
    }
    if (Schema f = find_connective(node.formulas, SchemaNode::Kind::And)) {
      ++stats.and_rule;
      node.expanded = true;
      expanded_order.push_back(id);
      std::vector<Schema> child = without(node.formulas, f);
      for (const auto& x : f->items) child.push_back(x);
      stack.push_back(new_node(id, std::move(child), node.unfold_count, "and",
                               node.emitted_diseq));
      return std::nullopt;
    }
    if (Schema f = find_connective(node.formulas, SchemaNode::Kind::Or)) {
      ++stats.or_rule;
      node.expanded = true;
      expanded_order.push_back(id);
      std::vector<Schema> rest = without(node.formulas, f);
      std::vector<int> kids;
      for (const auto& x : f->items) {
        std::vector<Schema> child = rest;
        child.push_back(x);
        kids.push_back(new_node(id, std::move(child), node.unfold_count, "or",
                                node.emitted_diseq));
      }
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        stack.push_back(*it);
      return std::nullopt;
    }
    if (auto cp = find_closure(node)) {
      ++stats.closure;
      node.expanded = true;
      expanded_order.push_back(id);
      std::vector<Schema> child = node.formulas;
      child.push_back(SchemaNode::disj(
          {SchemaNode::less(cp->pos->index, cp->neg->index),
           SchemaNode::less(cp->neg->index, cp->pos->index)}));
      auto diseq = node.emitted_diseq;
      diseq.insert(cp->key);
      stack.push_back(
          new_node(id, std::move(child), node.unfold_count, "closure", diseq));
      return std::nullopt;
    }
    Schema it = find_iteration(node.formulas);
    if (it) {
      if (try_block(nodes[id])) return std::nullopt;
      NodeRec& nd = nodes[id];  // re-borrow (try_block may not invalidate, but be tidy)
      if (nd.unfold_count >= limits.max_unfold) {
        nd.status = NodeStatus::Exhausted;
        return std::nullopt;
      }
      bool isAnd = it->kind == SchemaNode::Kind::BigAnd;
      if (isAnd)
        ++stats.iter_and;
      else
        ++stats.iter_or;
      nd.expanded = true;
      expanded_order.push_back(id);
      std::vector<Schema> rest = without(nd.formulas, it);

      // empty branch: b < a, iteration removed (top for /\, bottom for \/)
      std::vector<Schema> empty_child = rest;
      empty_child.push_back(SchemaNode::less(it->hi, it->lo));
      if (!isAnd) empty_child.push_back(SchemaNode::bot());

      // unfold branch: b >= a, peel the top rank
      std::vector<Schema> unfold_child = rest;
      unfold_child.push_back(SchemaNode::less(it->lo, it->hi + 1));
      Schema remaining =
          isAnd ? SchemaNode::big_and(it->counter, it->lo, it->hi - 1, it->body)
                : SchemaNode::big_or(it->counter, it->lo, it->hi - 1, it->body);
      Schema peeled = refresh_counters(
          substitute_counter(it->body, it->counter, it->hi), names);
      if (isAnd) {
        unfold_child.push_back(remaining);
        unfold_child.push_back(peeled);
      } else {
        unfold_child.push_back(SchemaNode::disj({remaining, peeled}));
      }

      int e = new_node(id, std::move(empty_child), nd.unfold_count, "iter-empty",
                       nd.emitted_diseq);
      int u = new_node(id, std::move(unfold_child), nd.unfold_count + 1,
                       "iter-unfold", nd.emitted_diseq);
      stack.push_back(u);
      stack.push_back(e);  // explored first: cheap model cases surface early
      return std::nullopt;
    }
    // irreducible open leaf
    nodes[id].status = NodeStatus::SatLeaf;
    return extract_model(nodes[id].formulas, params);
  }
};

}  // namespace

Interpretation extract_model(const std::vector<Schema>& leaf_formulas,
                             const std::set<std::string>& params) {
  Interpretation out;
  auto w = lia_sat(phi_n(leaf_formulas), params);
  if (!w)
    throw std::logic_error("extract_model: leaf constraints unsatisfiable");
  for (const auto& p : params) out.params[p] = (*w).count(p) ? (*w)[p] : 0;
  for (const auto& f : leaf_formulas) {
    if (f->kind != SchemaNode::Kind::Atom) continue;
    Int idx = f->index.eval(out.params);
    auto key = std::make_pair(f->sym, idx);
    auto it = out.props.find(key);
    if (it != out.props.end() && it->second != f->positive)
      throw std::logic_error("extract_model: complementary pair in open leaf");
    out.props[key] = f->positive;
  }
  return out;
}

RunResult run(const Schema& phi, const Limits& limits) {
  Engine eng;
  eng.limits = limits;
  eng.params = free_vars(phi);
  eng.names.reserve_all(phi);

  std::vector<Schema> root{phi};
  for (const auto& p : eng.params)
    root.push_back(
        SchemaNode::less(LinExpr::constant(-1), LinExpr::var(p)));  // p >= 0

  std::vector<int> stack;
  stack.push_back(eng.new_node(-1, std::move(root), 0, "root", {}));

  RunResult res;
  while (!stack.empty()) {
    if (eng.created > limits.node_budget) {
      eng.budget_hit = true;
      break;
    }
    int id = stack.back();
    stack.pop_back();
    auto model = eng.visit(id, stack);
    if (model) {
      res.kind = VerdictKind::Sat;
      res.model = *model;
      res.stats = eng.stats;
      res.tableau = std::move(eng.nodes);
      return res;
    }
  }

  // lemma count: distinct companions referenced by blocked leaves
  std::set<int> companions;
  bool exhausted = eng.budget_hit;
  for (const auto& n : eng.nodes) {
    if (n.status == NodeStatus::Blocked) companions.insert(n.companion);
    if (n.status == NodeStatus::Exhausted) exhausted = true;
  }
  eng.stats.lemmas = static_cast<long>(companions.size());

  res.stats = eng.stats;
  res.tableau = std::move(eng.nodes);
  if (exhausted) {
    res.kind = VerdictKind::Unknown;
    std::ostringstream os;
    if (eng.budget_hit)
      os << "node budget (" << limits.node_budget << ") exceeded";
    else
      os << "unfolding limit (" << limits.max_unfold << ") reached";
    res.resource_report = os.str();
  } else {
    res.kind = VerdictKind::Unsat;
  }
  return res;
}

// ---------------------------------------------------------------------------
// decide: classify, compile if needed, run, then map the model back

namespace {

std::optional<Interpretation> backmap_model(const Schema& original,
                                            const Interpretation& model,
                                            const RenamedAtomTable& table,
                                            bool normalized_split) {
  std::set<std::string> params = free_vars(original);
  std::vector<Int> cand_params;
  Int base = 0;
  for (const auto& [p, v] : model.params) base = v;
  if (normalized_split) {
    cand_params.push_back(base * 2);
    cand_params.push_back(base * 2 + 1);
  } else {
    cand_params.push_back(base);
  }
  for (Int k = 0; k <= 8; ++k) cand_params.push_back(k);

  std::set<std::string> orig_syms;
  collect_symbols(original, orig_syms);

  for (const auto& n_val : cand_params) {
    Interpretation j;
    for (const auto& p : params) j.params[p] = n_val;
    for (const auto& [key, val] : model.props) {
      const auto& [sym, idx] = key;
      auto it = table.fresh_to_source.find(sym);
      if (it != table.fresh_to_source.end()) {
        const RenamedAtom& ra = it->second;
        Int src_idx = ra.alpha * 2 * n_val + (ra.plus ? idx : -idx);
        j.props[{ra.source, src_idx}] = val;
      } else if (orig_syms.count(sym)) {
        j.props[key] = val;
      }
    }
    try {
      if (eval_schema(original, j)) return j;
    } catch (...) {
    }
    if (params.empty()) break;
  }
  return std::nullopt;
}

}  // namespace

DecideResult decide(const Schema& phi, const Limits& limits) {
  DecideResult out;
  out.report = classify(phi);
  if (out.report.is_regular || !out.report.is_bound_linear) {
    if (!out.report.is_bound_linear)
      out.pipeline.push_back(
          "schema is not bound-linear; running the tableau directly "
          "(termination not guaranteed)");
    out.result = run(phi, limits);
    if (out.result.kind == VerdictKind::Sat) out.original_model = out.result.model;
    return out;
  }
  // bound-linear but not regular: normalize + compile
  Schema norm = normalize_even(phi);
  bool split = !schema_eq(norm, phi);
  if (split) out.pipeline.push_back("normalized parameter coefficients (2n/2n+1 case split)");
  TauResult tr = tau_transform(norm);
  out.transformed = true;
  out.pipeline.push_back("compiled to regular form (" +
                         std::to_string(tr.trace.size()) + " rewrite steps)");
  out.result = run(tr.schema, limits);
  if (out.result.kind == VerdictKind::Sat) {
    out.original_model =
        backmap_model(phi, out.result.model, tr.table, split);
  }
  return out;
}

std::string tableau_dump(const RunResult& r) {
  std::ostringstream os;
  for (const auto& n : r.tableau) {
    os << "[" << n.id << "]";
    if (n.parent >= 0) os << " parent=" << n.parent;
    os << " rule=" << n.rule;
    switch (n.status) {
      case NodeStatus::Open: os << " open"; break;
      case NodeStatus::Closed: os << " closed"; break;
      case NodeStatus::Blocked:
        os << " blocked on [" << n.companion << "] with " << n.shift.str();
        break;
      case NodeStatus::SatLeaf: os << " satisfiable-leaf"; break;
      case NodeStatus::Exhausted: os << " exhausted"; break;
    }
    os << "\n";
    for (const auto& f : n.formulas) os << "    " << schema_str(f) << "\n";
  }
  // lemma list: companion nodes referenced by blocked leaves
  std::set<int> comps;
  for (const auto& n : r.tableau)
    if (n.status == NodeStatus::Blocked) comps.insert(n.companion);
  if (!comps.empty()) {
    os << "Lemmas:\n";
    for (int c : comps) {
      os << "  [";
      bool first = true;
      for (const auto& f : r.tableau[c].formulas) {
        if (!first) os << " ; ";
        first = false;
        os << schema_str(f);
      }
      os << "]\n";
    }
  }
  return os.str();
}

}  // namespace stab
