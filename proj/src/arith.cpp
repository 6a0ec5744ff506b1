#include "stab/arith.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace stab {

ArithFormula ArithFormula::tt() {
  ArithFormula f;
  f.kind_ = Kind::True;
  return f;
}

ArithFormula ArithFormula::ff() {
  ArithFormula f;
  f.kind_ = Kind::False;
  return f;
}

ArithFormula ArithFormula::less(LinExpr a, LinExpr b) {
  LinExpr d = a - b;
  if (d.is_constant()) return d.constant_term() < 0 ? tt() : ff();
  ArithFormula f;
  f.kind_ = Kind::Less;
  f.lhs_ = std::move(a);
  f.rhs_ = std::move(b);
  return f;
}

ArithFormula ArithFormula::leq(const LinExpr& a, const LinExpr& b) {
  return less(a, b + 1);
}

ArithFormula ArithFormula::geq(const LinExpr& a, const LinExpr& b) {
  return leq(b, a);
}

ArithFormula ArithFormula::greater(const LinExpr& a, const LinExpr& b) {
  return less(b, a);
}

ArithFormula ArithFormula::eq(const LinExpr& a, const LinExpr& b) {
  return conj({leq(a, b), leq(b, a)});
}

ArithFormula ArithFormula::neq(const LinExpr& a, const LinExpr& b) {
  return disj({less(a, b), less(b, a)});
}

ArithFormula ArithFormula::conj(std::vector<ArithFormula> parts) {
  std::vector<ArithFormula> out;
  for (auto& p : parts) {
    if (p.is_false()) return ff();
    if (p.is_true()) continue;
    if (p.kind_ == Kind::And) {
      for (auto& q : p.parts_) out.push_back(std::move(q));
    } else {
      out.push_back(std::move(p));
    }
  }
  if (out.empty()) return tt();
  if (out.size() == 1) return out[0];
  ArithFormula f;
  f.kind_ = Kind::And;
  f.parts_ = std::move(out);
  return f;
}

ArithFormula ArithFormula::disj(std::vector<ArithFormula> parts) {
  std::vector<ArithFormula> out;
  for (auto& p : parts) {
    if (p.is_true()) return tt();
    if (p.is_false()) continue;
    if (p.kind_ == Kind::Or) {
      for (auto& q : p.parts_) out.push_back(std::move(q));
    } else {
      out.push_back(std::move(p));
    }
  }
  if (out.empty()) return ff();
  if (out.size() == 1) return out[0];
  ArithFormula f;
  f.kind_ = Kind::Or;
  f.parts_ = std::move(out);
  return f;
}

ArithFormula ArithFormula::negate() const {
  switch (kind_) {
    case Kind::True:
      return ff();
    case Kind::False:
      return tt();
    case Kind::Less:
      // not (a < b)  <=>  b <= a  <=>  b < a + 1
      return less(rhs_, lhs_ + 1);
    case Kind::And: {
      std::vector<ArithFormula> ps;
      ps.reserve(parts_.size());
      for (const auto& p : parts_) ps.push_back(p.negate());
      return disj(std::move(ps));
    }
    case Kind::Or: {
      std::vector<ArithFormula> ps;
      ps.reserve(parts_.size());
      for (const auto& p : parts_) ps.push_back(p.negate());
      return conj(std::move(ps));
    }
  }
  return ff();
}

bool ArithFormula::eval(const std::map<std::string, Int>& env) const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Less:
      return lhs_.eval(env) < rhs_.eval(env);
    case Kind::And:
      for (const auto& p : parts_)
        if (!p.eval(env)) return false;
      return true;
    case Kind::Or:
      for (const auto& p : parts_)
        if (p.eval(env)) return true;
      return false;
  }
  return false;
}

ArithFormula ArithFormula::subst(
    const std::map<std::string, LinExpr>& sigma) const {
  switch (kind_) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Less:
      return less(lhs_.subst(sigma), rhs_.subst(sigma));
    case Kind::And: {
      std::vector<ArithFormula> ps;
      ps.reserve(parts_.size());
      for (const auto& p : parts_) ps.push_back(p.subst(sigma));
      return conj(std::move(ps));
    }
    case Kind::Or: {
      std::vector<ArithFormula> ps;
      ps.reserve(parts_.size());
      for (const auto& p : parts_) ps.push_back(p.subst(sigma));
      return disj(std::move(ps));
    }
  }
  return *this;
}

void ArithFormula::collect_vars(std::set<std::string>& out) const {
  switch (kind_) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Less:
      lhs_.collect_vars(out);
      rhs_.collect_vars(out);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : parts_) p.collect_vars(out);
      return;
  }
}

bool ArithFormula::operator==(const ArithFormula& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Less:
      return lhs_ == o.lhs_ && rhs_ == o.rhs_;
    case Kind::And:
    case Kind::Or:
      return parts_ == o.parts_;
  }
  return false;
}

std::string ArithFormula::str() const {
  switch (kind_) {
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    case Kind::Less:
      return lhs_.str() + " < " + rhs_.str();
    case Kind::And:
    case Kind::Or: {
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << (kind_ == Kind::And ? " /\\ " : " \\/ ");
        os << parts_[i].str();
      }
      os << ")";
      return os.str();
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Cooper-style elimination.

namespace {

// Internal atoms: t < 0, d | t, d !| t.
struct CAtom {
  enum class Rel { Lt0, Div, Ndiv };
  Rel rel;
  Int mod;  // for Div / Ndiv
  LinExpr t;

  bool ground() const { return t.is_constant(); }
  bool eval_ground() const {
    switch (rel) {
      case Rel::Lt0:
        return t.constant_term() < 0;
      case Rel::Div:
        return pos_mod(t.constant_term(), mod) == 0;
      case Rel::Ndiv:
        return pos_mod(t.constant_term(), mod) != 0;
    }
    return false;
  }

  // Keeps coefficients small: strict inequalities are divided by the gcd of
  // the variable coefficients (with floor adjustment of the constant), and
  // divisibility atoms are reduced modulo their modulus.
  void normalize() {
    if (t.is_constant()) return;
    if (rel == Rel::Lt0) {
      Int g = 0;
      for (const auto& [v, c] : t.coeffs()) g = gcd(g, c);
      g = abs(g);
      if (g > 1) {
        LinExpr s;
        for (const auto& [v, c] : t.coeffs()) s = s + LinExpr::var(v, c / g);
        // sum + k < 0  <=>  sum/g <= floor((-k-1)/g)
        Int k = t.constant_term();
        t = s - floor_div(-k - 1, g);
      }
      return;
    }
    // coefficients and constant only matter modulo the modulus
    LinExpr s = LinExpr::constant(pos_mod(t.constant_term(), mod));
    for (const auto& [v, c] : t.coeffs()) {
      Int r = pos_mod(c, mod);
      if (r != 0) s = s + LinExpr::var(v, r);
    }
    t = s;
    if (!t.is_constant()) {
      Int g = mod;
      for (const auto& [v, c] : t.coeffs()) g = gcd(g, c);
      g = gcd(g, t.constant_term());
      if (g > 1) {
        LinExpr s2 = LinExpr::constant(t.constant_term() / g);
        for (const auto& [v, c] : t.coeffs()) s2 = s2 + LinExpr::var(v, c / g);
        t = s2;
        mod = mod / g;
      }
    }
  }
};

struct CF {
  enum class K { True, False, Atom, And, Or };
  K k = K::True;
  CAtom atom{CAtom::Rel::Lt0, 0, LinExpr()};
  std::vector<CF> parts;

  static CF tt() { return CF{}; }
  static CF ff() {
    CF f;
    f.k = K::False;
    return f;
  }
  static CF mk_atom(CAtom a) {
    a.normalize();
    if (a.ground()) return a.eval_ground() ? tt() : ff();
    if (a.rel != CAtom::Rel::Lt0 && a.mod == 1)
      return a.rel == CAtom::Rel::Div ? tt() : ff();
    CF f;
    f.k = K::Atom;
    f.atom = std::move(a);
    return f;
  }
  static int cmp(const CF& a, const CF& b) {
    if (a.k != b.k) return a.k < b.k ? -1 : 1;
    if (a.k == K::Atom) {
      if (a.atom.rel != b.atom.rel) return a.atom.rel < b.atom.rel ? -1 : 1;
      if (a.atom.mod != b.atom.mod) return a.atom.mod < b.atom.mod ? -1 : 1;
      if (a.atom.t == b.atom.t) return 0;
      return a.atom.t < b.atom.t ? -1 : 1;
    }
    if (a.parts.size() != b.parts.size())
      return a.parts.size() < b.parts.size() ? -1 : 1;
    for (size_t i = 0; i < a.parts.size(); ++i)
      if (int c = cmp(a.parts[i], b.parts[i])) return c;
    return 0;
  }

  static CF mk_and(std::vector<CF> ps) {
    std::vector<CF> out;
    for (auto& p : ps) {
      if (p.k == K::False) return ff();
      if (p.k == K::True) continue;
      if (p.k == K::And)
        for (auto& q : p.parts) out.push_back(std::move(q));
      else
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const CF& a, const CF& b) { return cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CF& a, const CF& b) { return cmp(a, b) == 0; }),
              out.end());
    if (out.empty()) return tt();
    if (out.size() == 1) return out[0];
    CF f;
    f.k = K::And;
    f.parts = std::move(out);
    return f;
  }
  static CF mk_or(std::vector<CF> ps) {
    std::vector<CF> out;
    for (auto& p : ps) {
      if (p.k == K::True) return tt();
      if (p.k == K::False) continue;
      if (p.k == K::Or)
        for (auto& q : p.parts) out.push_back(std::move(q));
      else
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const CF& a, const CF& b) { return cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CF& a, const CF& b) { return cmp(a, b) == 0; }),
              out.end());
    if (out.empty()) return ff();
    if (out.size() == 1) return out[0];
    CF f;
    f.k = K::Or;
    f.parts = std::move(out);
    return f;
  }

  bool eval_ground() const {
    switch (k) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Atom:
        return atom.eval_ground();
      case K::And:
        for (const auto& p : parts)
          if (!p.eval_ground()) return false;
        return true;
      case K::Or:
        for (const auto& p : parts)
          if (p.eval_ground()) return true;
        return false;
    }
    return false;
  }

  bool eval(const std::map<std::string, Int>& env) const {
    switch (k) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Atom: {
        Int v = atom.t.eval(env);
        switch (atom.rel) {
          case CAtom::Rel::Lt0:
            return v < 0;
          case CAtom::Rel::Div:
            return pos_mod(v, atom.mod) == 0;
          case CAtom::Rel::Ndiv:
            return pos_mod(v, atom.mod) != 0;
        }
        return false;
      }
      case K::And:
        for (const auto& p : parts)
          if (!p.eval(env)) return false;
        return true;
      case K::Or:
        for (const auto& p : parts)
          if (p.eval(env)) return true;
        return false;
    }
    return false;
  }

  void collect_vars(std::set<std::string>& out) const {
    if (k == K::Atom) atom.t.collect_vars(out);
    for (const auto& p : parts) p.collect_vars(out);
  }
};

CF convert(const ArithFormula& f) {
  switch (f.kind()) {
    case ArithFormula::Kind::True:
      return CF::tt();
    case ArithFormula::Kind::False:
      return CF::ff();
    case ArithFormula::Kind::Less:
      return CF::mk_atom(
          CAtom{CAtom::Rel::Lt0, 0, f.lhs() - f.rhs()});
    case ArithFormula::Kind::And: {
      std::vector<CF> ps;
      for (const auto& p : f.parts()) ps.push_back(convert(p));
      return CF::mk_and(std::move(ps));
    }
    case ArithFormula::Kind::Or: {
      std::vector<CF> ps;
      for (const auto& p : f.parts()) ps.push_back(convert(p));
      return CF::mk_or(std::move(ps));
    }
  }
  return CF::ff();
}

// Substitutes an expression for variable x throughout.
CF subst_var(const CF& f, const std::string& x, const LinExpr& e) {
  switch (f.k) {
    case CF::K::True:
    case CF::K::False:
      return f;
    case CF::K::Atom: {
      CAtom a = f.atom;
      Int c = a.t.coeff(x);
      if (c == 0) return f;
      a.t = a.t - LinExpr::var(x, c) + e * c;
      return CF::mk_atom(std::move(a));
    }
    case CF::K::And: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(subst_var(p, x, e));
      return CF::mk_and(std::move(ps));
    }
    case CF::K::Or: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(subst_var(p, x, e));
      return CF::mk_or(std::move(ps));
    }
  }
  return f;
}

void collect_x_atoms(const CF& f, const std::string& x,
                     std::vector<const CAtom*>& out) {
  if (f.k == CF::K::Atom) {
    if (f.atom.t.mentions(x)) out.push_back(&f.atom);
    return;
  }
  for (const auto& p : f.parts) collect_x_atoms(p, x, out);
}

// Rewrites every atom containing x so that the coefficient of x becomes
// +-delta, where delta is the lcm of all |coefficients| of x, then treats
// delta*x as a single unit variable y. Returns the formula over y together
// with the conjunct delta | y.
CF scale_to_unit(const CF& f, const std::string& x, const Int& delta,
                 const std::string& y) {
  switch (f.k) {
    case CF::K::True:
    case CF::K::False:
      return f;
    case CF::K::Atom: {
      const CAtom& a = f.atom;
      Int c = a.t.coeff(x);
      if (c == 0) return f;
      Int s = delta / abs(c);  // positive
      CAtom b = a;
      b.t = a.t * s;  // coefficient of x is now +-delta
      if (b.rel != CAtom::Rel::Lt0) b.mod = a.mod * s;
      // replace (+-delta)*x by (+-1)*y
      Int cy = b.t.coeff(x) / delta;
      b.t = b.t - LinExpr::var(x, b.t.coeff(x)) + LinExpr::var(y, cy);
      return CF::mk_atom(std::move(b));
    }
    case CF::K::And: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(scale_to_unit(p, x, delta, y));
      return CF::mk_and(std::move(ps));
    }
    case CF::K::Or: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(scale_to_unit(p, x, delta, y));
      return CF::mk_or(std::move(ps));
    }
  }
  return f;
}

// The minus-infinity variant: upper-bound atoms on y become true,
// lower-bound atoms false; divisibility atoms are kept.
CF minus_infinity(const CF& f, const std::string& y) {
  switch (f.k) {
    case CF::K::True:
    case CF::K::False:
      return f;
    case CF::K::Atom: {
      const CAtom& a = f.atom;
      Int c = a.t.coeff(y);
      if (c == 0) return f;
      if (a.rel == CAtom::Rel::Lt0) return c > 0 ? CF::tt() : CF::ff();
      return f;  // divisibility: kept, y substituted later
    }
    case CF::K::And: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(minus_infinity(p, y));
      return CF::mk_and(std::move(ps));
    }
    case CF::K::Or: {
      std::vector<CF> ps;
      for (const auto& p : f.parts) ps.push_back(minus_infinity(p, y));
      return CF::mk_or(std::move(ps));
    }
  }
  return f;
}

void collect_lower_bounds(const CF& f, const std::string& y,
                          std::vector<LinExpr>& out) {
  if (f.k == CF::K::Atom) {
    const CAtom& a = f.atom;
    if (a.rel == CAtom::Rel::Lt0 && a.t.coeff(y) == -1) {
      // -y + r < 0  <=>  r < y : lower bound term r
      out.push_back(a.t + LinExpr::var(y, 1));
    }
    return;
  }
  for (const auto& p : f.parts) collect_lower_bounds(p, y, out);
}

// Core Cooper step on a formula that mentions x.
CF cooper_core(const CF& f, const std::string& x, const std::string& y) {
  std::vector<const CAtom*> xatoms;
  collect_x_atoms(f, x, xatoms);
  if (xatoms.empty()) return f;
  Int delta = 1;
  for (const auto* a : xatoms) delta = lcm_int(delta, a->t.coeff(x));
  CF g = scale_to_unit(f, x, delta, y);
  g = CF::mk_and({std::move(g),
                  CF::mk_atom(CAtom{CAtom::Rel::Div, delta, LinExpr::var(y)})});

  Int m = delta;
  std::vector<const CAtom*> yatoms;
  collect_x_atoms(g, y, yatoms);
  for (const auto* a : yatoms)
    if (a->rel != CAtom::Rel::Lt0) m = lcm_int(m, a->mod);

  std::vector<LinExpr> lbs;
  collect_lower_bounds(g, y, lbs);
  std::sort(lbs.begin(), lbs.end());
  lbs.erase(std::unique(lbs.begin(), lbs.end()), lbs.end());

  CF minf = minus_infinity(g, y);
  std::vector<CF> disjuncts;
  for (Int j = 1; j <= m; ++j) {
    disjuncts.push_back(subst_var(minf, y, LinExpr::constant(j)));
  }
  for (const auto& b : lbs) {
    for (Int j = 1; j <= m; ++j) {
      disjuncts.push_back(subst_var(g, y, b + j));
    }
  }
  return CF::mk_or(std::move(disjuncts));
}

bool contains_var(const CF& f, const std::string& x) {
  if (f.k == CF::K::Atom) return f.atom.t.mentions(x);
  for (const auto& p : f.parts)
    if (contains_var(p, x)) return true;
  return false;
}

// Miniscoped elimination: the existential distributes over disjunction and
// skips x-free conjuncts, which keeps the Cooper expansion local.
CF eliminate(const CF& f, const std::string& x, const std::string& y) {
  if (!contains_var(f, x)) return f;
  if (f.k == CF::K::Or) {
    std::vector<CF> parts;
    parts.reserve(f.parts.size());
    for (const auto& p : f.parts) parts.push_back(eliminate(p, x, y));
    return CF::mk_or(std::move(parts));
  }
  if (f.k == CF::K::And) {
    std::vector<CF> with_x, free_of_x;
    for (const auto& p : f.parts) {
      if (contains_var(p, x))
        with_x.push_back(p);
      else
        free_of_x.push_back(p);
    }
    CF core = cooper_core(CF::mk_and(std::move(with_x)), x, y);
    free_of_x.push_back(std::move(core));
    return CF::mk_and(std::move(free_of_x));
  }
  return cooper_core(f, x, y);
}

// Finds the best satisfying value of the single remaining variable x in g
// (all other variables already ground). Returns nullopt if none exists.
std::optional<Int> solve_single(const CF& g, const std::string& x) {
  std::vector<const CAtom*> xatoms;
  collect_x_atoms(g, x, xatoms);
  if (xatoms.empty()) return g.eval_ground() ? std::optional<Int>(0) : std::nullopt;

  Int delta = 1;
  for (const auto* a : xatoms) delta = lcm_int(delta, a->t.coeff(x));
  const std::string y = "#y";
  CF h = scale_to_unit(g, x, delta, y);
  h = CF::mk_and({std::move(h),
                  CF::mk_atom(CAtom{CAtom::Rel::Div, delta, LinExpr::var(y)})});

  Int m = delta;
  std::vector<const CAtom*> yatoms;
  collect_x_atoms(h, y, yatoms);
  Int threshold_min = 0;
  bool have_threshold = false;
  for (const auto* a : yatoms) {
    if (a->rel != CAtom::Rel::Lt0) {
      m = lcm_int(m, a->mod);
      continue;
    }
    // +-y + r < 0: behavior switches around -+r.
    Int r = (a->t - LinExpr::var(y, a->t.coeff(y))).constant_term();
    Int thr = a->t.coeff(y) > 0 ? -r : r;
    if (!have_threshold || thr < threshold_min) {
      threshold_min = thr;
      have_threshold = true;
    }
  }

  std::vector<Int> candidates;
  std::vector<LinExpr> lbs;
  collect_lower_bounds(h, y, lbs);
  for (const auto& b : lbs) {
    Int bv = b.constant_term();
    for (Int j = 1; j <= m; ++j) candidates.push_back(bv + j);
  }
  Int top = have_threshold ? threshold_min - 1 : Int(-1);
  for (Int j = 1; j <= m; ++j) {
    candidates.push_back(top - pos_mod(top - j, m));
  }

  std::optional<Int> best;
  for (const Int& yv : candidates) {
    if (pos_mod(yv, delta) != 0) continue;
    Int xv = yv / delta;
    std::map<std::string, Int> env{{x, xv}};
    if (!g.eval(env)) continue;
    if (!best) {
      best = xv;
      continue;
    }
    Int ba = abs(*best), xa = abs(xv);
    if (xa < ba || (xa == ba && xv > *best)) best = xv;
  }
  return best;
}

CF with_nonneg(const ArithFormula& f, const std::set<std::string>& nonneg,
               std::set<std::string>& vars_out) {
  CF g = convert(f);
  f.collect_vars(vars_out);
  std::vector<CF> parts{g};
  for (const auto& v : nonneg) {
    if (vars_out.count(v)) {
      // v >= 0  <=>  -v - 1 < 0
      parts.push_back(CF::mk_atom(
          CAtom{CAtom::Rel::Lt0, 0, LinExpr::var(v, -1) - 1}));
    }
  }
  return CF::mk_and(std::move(parts));
}

}  // namespace

namespace {

// Cheapest-scaling-first elimination order.
std::vector<std::string> elimination_order(const CF& g,
                                           const std::set<std::string>& vars) {
  std::vector<std::pair<Int, std::string>> weighted;
  for (const auto& v : vars) {
    std::vector<const CAtom*> atoms;
    collect_x_atoms(g, v, atoms);
    Int delta = 1;
    for (const auto* a : atoms) delta = lcm_int(delta, a->t.coeff(v));
    weighted.push_back({delta, v});
  }
  std::sort(weighted.begin(), weighted.end());
  std::vector<std::string> order;
  order.reserve(weighted.size());
  for (auto& [d, v] : weighted) order.push_back(std::move(v));
  return order;
}

}  // namespace

std::optional<IntAssignment> lia_sat(const ArithFormula& f,
                                     const std::set<std::string>& nonneg) {
  std::set<std::string> vars;
  CF g = with_nonneg(f, nonneg, vars);

  std::vector<std::string> order = elimination_order(g, vars);
  // Snapshots: stages[i] is the formula before eliminating order[i].
  std::vector<CF> stages;
  stages.reserve(order.size());
  CF cur = g;
  for (size_t i = 0; i < order.size(); ++i) {
    stages.push_back(cur);
    cur = eliminate(cur, order[i], "#y" + std::to_string(i));
    if (cur.k == CF::K::True || cur.k == CF::K::False) {
      // Remaining variables are unconstrained from here on.
      for (size_t j = i + 1; j < order.size(); ++j) stages.push_back(cur);
      break;
    }
  }
  if (!cur.eval_ground()) return std::nullopt;

  IntAssignment out;
  // Back-substitute, last eliminated variable first.
  for (size_t i = order.size(); i-- > 0;) {
    CF inst = stages[i];
    for (size_t j = i + 1; j < order.size(); ++j)
      inst = subst_var(inst, order[j], LinExpr::constant(out[order[j]]));
    auto v = solve_single(inst, order[i]);
    if (!v) throw std::logic_error("lia_sat: witness extraction failed");
    out[order[i]] = *v;
  }
  for (const auto& v : nonneg)
    if (!out.count(v)) out[v] = 0;

  return out;
}

bool lia_entails(const ArithFormula& hyp, const ArithFormula& concl,
                 const std::set<std::string>& nonneg) {
  ArithFormula q = ArithFormula::conj({hyp, concl.negate()});
  return !lia_sat(q, nonneg).has_value();
}

bool lia_valid(const ArithFormula& f, const std::set<std::string>& nonneg) {
  return !lia_sat(f.negate(), nonneg).has_value();
}

Int lia_small_model_bound(const ArithFormula& f,
                          const std::set<std::string>& nonneg) {
  auto w = lia_sat(f, nonneg);
  Int b = 1;
  if (w) {
    for (const auto& [v, x] : *w) {
      Int a = abs(x);
      if (a > b) b = a;
    }
  }
  return b;
}

}  // namespace stab
