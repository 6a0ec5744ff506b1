#include <doctest.h>

#include <random>

#include "stab/arith.hpp"

using namespace stab;

namespace {

LinExpr v(const std::string& name, long c = 1) { return LinExpr::var(name, c); }
LinExpr k(long c) { return LinExpr::constant(c); }

}  // namespace

TEST_CASE("linear expressions normalize by construction") {
  // n + 1 + n + 2 == 2n + 3
  LinExpr a = v("n") + k(1) + v("n") + k(2);
  LinExpr b = v("n", 2) + k(3);
  CHECK(a == b);
  CHECK(a.str() == "2*n+3");

  CHECK(k(0).is_constant());
  CHECK(k(0).coeffs().empty());

  LinExpr c = (v("n") - k(1)) - (v("n") - k(1));
  CHECK(c == k(0));
}

TEST_CASE("normalization is idempotent and substitution renormalizes") {
  LinExpr a = v("n", 3) + k(-2);
  LinExpr twice = a.subst({{"n", v("n")}});
  CHECK(a == twice);
  // p_{3n}[n -> 2n] = p_{6n}
  CHECK(a.subst({{"n", v("n", 2)}}) == v("n", 6) + k(-2));
}

TEST_CASE("lia_sat: paper branch constraints") {
  // n >= 0 /\ n != 0 /\ n < 1 is unsatisfiable
  ArithFormula f = ArithFormula::conj({ArithFormula::geq(v("n"), k(0)),
                                       ArithFormula::neq(v("n"), k(0)),
                                       ArithFormula::less(v("n"), k(1))});
  CHECK(!lia_sat(f).has_value());

  // n = n is satisfiable
  CHECK(lia_sat(ArithFormula::eq(v("n"), v("n"))).has_value());

  // the model-building example: n-1 >= 1, n-1 != n, n-1 != 2, n-1 != 1
  LinExpr nm1 = v("n") - k(1);
  ArithFormula g = ArithFormula::conj(
      {ArithFormula::geq(nm1, k(1)), ArithFormula::neq(nm1, v("n")),
       ArithFormula::neq(nm1, k(2)), ArithFormula::neq(nm1, k(1))});
  auto w = lia_sat(g, {"n"});
  REQUIRE(w.has_value());
  CHECK((*w)["n"] == 4);
}

TEST_CASE("lia_entails: shifted nonnegativity") {
  // n >= 1 |= (n >= 0)[n -> n-1]
  ArithFormula hyp = ArithFormula::geq(v("n"), k(1));
  ArithFormula concl = ArithFormula::geq(v("n") - k(1), k(0));
  CHECK(lia_entails(hyp, concl));
  CHECK(lia_entails(ArithFormula::tt(), ArithFormula::tt()));
  CHECK(!lia_entails(ArithFormula::geq(v("n"), k(0)),
                     ArithFormula::geq(v("n"), k(1))));
}

TEST_CASE("lia_sat respects the nonneg set and witnesses evaluate true") {
  ArithFormula f = ArithFormula::less(v("x"), k(-5));
  auto w = lia_sat(f);
  REQUIRE(w.has_value());
  CHECK(f.eval(*w));
  CHECK(!lia_sat(f, {"x"}).has_value());
}

TEST_CASE("divisibility-style reasoning through eliminated equalities") {
  // 2x = y /\ y = 7 is unsatisfiable over Z
  ArithFormula f = ArithFormula::conj(
      {ArithFormula::eq(v("x", 2), v("y")), ArithFormula::eq(v("y"), k(7))});
  CHECK(!lia_sat(f).has_value());
  // 2x = y /\ y = 8 has the witness x = 4
  ArithFormula g = ArithFormula::conj(
      {ArithFormula::eq(v("x", 2), v("y")), ArithFormula::eq(v("y"), k(8))});
  auto w = lia_sat(g);
  REQUIRE(w.has_value());
  CHECK((*w)["x"] == 4);
}

namespace {

// random formulas over <= 3 vars with small coefficients
ArithFormula random_formula(std::mt19937_64& rng, int depth) {
  auto below = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth == 0 || below(100) < 40) {
    const char* vars[] = {"x", "y", "z"};
    LinExpr l = k(below(17) - 8), r = k(below(17) - 8);
    for (int i = 0; i < 3; ++i) {
      if (below(2)) l = l + v(vars[i], below(9) - 4);
      if (below(2)) r = r + v(vars[i], below(9) - 4);
    }
    switch (below(4)) {
      case 0: return ArithFormula::less(l, r);
      case 1: return ArithFormula::leq(l, r);
      case 2: return ArithFormula::eq(l, r);
      default: return ArithFormula::neq(l, r);
    }
  }
  std::vector<ArithFormula> parts;
  int n = 2 + below(2);
  for (int i = 0; i < n; ++i) parts.push_back(random_formula(rng, depth - 1));
  return below(2) ? ArithFormula::conj(std::move(parts))
                  : ArithFormula::disj(std::move(parts));
}

bool box_search(const ArithFormula& f, const std::set<std::string>& vars,
                long bound) {
  std::vector<std::string> vs(vars.begin(), vars.end());
  std::map<std::string, Int> env;
  std::function<bool(size_t)> go = [&](size_t i) {
    if (i == vs.size()) return f.eval(env);
    for (long val = -bound; val <= bound; ++val) {
      env[vs[i]] = val;
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_CASE("oracle agreement on random formulas (small sample)") {
  std::mt19937_64 rng(20240817);
  for (int iter = 0; iter < 150; ++iter) {
    ArithFormula f = random_formula(rng, 2);
    std::set<std::string> vars;
    f.collect_vars(vars);
    auto w = lia_sat(f);
    if (w) {
      CHECK(f.eval(*w));
    } else {
      Int b = lia_small_model_bound(f);
      long bound = std::max<long>(8, to_long(b));
      CHECK(!box_search(f, vars, bound));
    }
  }
}

TEST_CASE("ring homomorphism spot checks") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    auto below = [&](int n) { return static_cast<int>(rng() % n); };
    LinExpr a = v("x", below(9) - 4) + v("y", below(9) - 4) + k(below(9) - 4);
    LinExpr b = v("x", below(9) - 4) + v("y", below(9) - 4) + k(below(9) - 4);
    std::map<std::string, Int> env{{"x", below(21) - 10}, {"y", below(21) - 10}};
    CHECK((a + b).eval(env) == a.eval(env) + b.eval(env));
    CHECK((a - b).eval(env) == a.eval(env) - b.eval(env));
  }
}
