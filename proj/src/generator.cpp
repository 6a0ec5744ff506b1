#include "stab/generator.hpp"

#include <random>

#include "stab/classify.hpp"

namespace stab {

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  // uniform in [0, n) independent of library distribution internals
  int below(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int pct) { return below(100) < pct; }
};

const char* kSyms[] = {"P", "Q", "R"};

struct Gen {
  Rng rng;
  FreshNames names;
  bool use_param;

  explicit Gen(uint64_t seed) : rng(seed), use_param(true) {
    names.reserve("n");
    names.reserve("P");
    names.reserve("Q");
    names.reserve("R");
  }

  LinExpr index(const std::string& counter) {
    // alpha*n + beta*i + gamma, beta in {-1,0,1}
    Int alpha = use_param ? Int(rng.range(-1, 2)) : Int(0);
    Int beta = counter.empty() ? Int(0) : Int(rng.range(-1, 1));
    Int gamma = rng.range(-2, 2);
    LinExpr e = LinExpr::constant(gamma);
    if (alpha != 0) e = e + LinExpr::var("n", alpha);
    if (beta != 0) e = e + LinExpr::var(counter, beta);
    if (e.coeffs().empty() && rng.chance(60) && !counter.empty())
      e = e + LinExpr::var(counter);
    return e;
  }

  Schema literal(const std::string& counter) {
    return SchemaNode::atom(kSyms[rng.below(3)], index(counter),
                            rng.chance(55));
  }

  Schema formula(int budget, const std::string& counter, int depth) {
    if (budget <= 0) return literal(counter);
    int pick = rng.below(100);
    if (pick < 30) return literal(counter);
    if (pick < 75 || depth >= 2) {
      // binary connective
      int left = budget / 2;
      std::vector<Schema> xs{formula(left, counter, depth),
                             formula(budget - 1 - left, counter, depth)};
      return rng.chance(50) ? SchemaNode::conj(std::move(xs))
                            : SchemaNode::disj(std::move(xs));
    }
    // iteration: lower alpha*n+beta (alpha in {0,1}), upper gamma*n+delta+eps*j
    std::string c = names.fresh("i");
    Int lo_alpha = (use_param && rng.chance(20)) ? 1 : 0;
    Int lo_beta = rng.range(0, 2);
    LinExpr lo = LinExpr::constant(lo_beta);
    if (lo_alpha != 0) lo = lo + LinExpr::var("n", lo_alpha);
    Int hi_gamma = use_param ? Int(rng.range(0, 2)) : Int(0);
    Int hi_delta = rng.range(-1, 2);
    Int eps = (!counter.empty() && rng.chance(25)) ? Int(rng.chance(50) ? 1 : -1)
                                                   : Int(0);
    LinExpr hi = LinExpr::constant(hi_delta);
    if (hi_gamma != 0) hi = hi + LinExpr::var("n", hi_gamma);
    if (eps != 0) hi = hi + LinExpr::var(counter, eps);
    if (hi.coeffs().empty() && lo.coeffs().empty() &&
        hi.constant_term() < lo.constant_term()) {
      hi = lo + rng.range(0, 2);
    }
    if (use_param && hi_gamma == 0 && eps == 0 && rng.chance(70)) {
      hi = hi + LinExpr::var("n");
    }
    Schema body = formula(budget - 2, c, depth + 1);
    Schema it = rng.chance(50) ? SchemaNode::big_and(c, lo, hi, body)
                               : SchemaNode::big_or(c, lo, hi, body);
    if (it->kind != SchemaNode::Kind::BigAnd &&
        it->kind != SchemaNode::Kind::BigOr)
      return it;  // collapsed by simplification
    return it;
  }
};

}  // namespace

Schema gen_bound_linear(uint64_t seed, int size_budget) {
  Gen g(seed ^ 0x9e3779b97f4a7c15ull);
  if (size_budget <= 0) return SchemaNode::atom("P", LinExpr::constant(0), true);
  Schema s = g.formula(size_budget, "", 0);
  // occasionally conjoin a top-level arithmetic constraint on the parameter
  if (g.rng.chance(25) && free_vars(s).count("n")) {
    Schema c = SchemaNode::less(LinExpr::constant(g.rng.range(-1, 2)),
                                LinExpr::var("n"));
    s = SchemaNode::conj({s, c});
  }
  return s;
}

namespace {

void shrink_into(const Schema& s, std::vector<Schema>& out) {
  switch (s->kind) {
    case SchemaNode::Kind::And:
    case SchemaNode::Kind::Or: {
      // drop one item
      for (size_t i = 0; i < s->items.size(); ++i) {
        std::vector<Schema> rest;
        for (size_t j = 0; j < s->items.size(); ++j)
          if (j != i) rest.push_back(s->items[j]);
        out.push_back(s->kind == SchemaNode::Kind::And
                          ? SchemaNode::conj(std::move(rest))
                          : SchemaNode::disj(std::move(rest)));
      }
      // shrink one item in place
      for (size_t i = 0; i < s->items.size(); ++i) {
        std::vector<Schema> subs;
        shrink_into(s->items[i], subs);
        for (const auto& sub : subs) {
          std::vector<Schema> items = s->items;
          items[i] = sub;
          out.push_back(s->kind == SchemaNode::Kind::And
                            ? SchemaNode::conj(std::move(items))
                            : SchemaNode::disj(std::move(items)));
        }
      }
      return;
    }
    case SchemaNode::Kind::BigAnd:
    case SchemaNode::Kind::BigOr: {
      // replace the iteration by a single instance at the lower bound
      out.push_back(substitute_counter(s->body, s->counter, s->lo));
      std::vector<Schema> subs;
      shrink_into(s->body, subs);
      for (const auto& sub : subs) {
        out.push_back(s->kind == SchemaNode::Kind::BigAnd
                          ? SchemaNode::big_and(s->counter, s->lo, s->hi, sub)
                          : SchemaNode::big_or(s->counter, s->lo, s->hi, sub));
      }
      return;
    }
    case SchemaNode::Kind::Atom: {
      if (!s->index.is_constant())
        out.push_back(SchemaNode::atom(s->sym, LinExpr::constant(0), s->positive));
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::vector<Schema> shrink_bound_linear(const Schema& s) {
  std::vector<Schema> out;
  shrink_into(s, out);
  std::vector<Schema> ok;
  for (const auto& c : out) {
    // the lower-bound instantiation can break hygiene or linearity; keep
    // only candidates that still classify as bound-linear
    try {
      if (classify(c).is_bound_linear) ok.push_back(c);
    } catch (...) {
    }
  }
  return ok;
}

}  // namespace stab
