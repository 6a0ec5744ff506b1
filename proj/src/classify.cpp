#include "stab/classify.hpp"

#include <functional>
#include <sstream>

namespace stab {

namespace {

// Index shape alpha*n + beta*i + gamma where i is a bound variable and
// beta in {-1,0,1}; at most one bound variable, unit coefficient.
bool index_ok(const LinExpr& e, const std::set<std::string>& counters,
              const std::optional<std::string>& param) {
  int bound_seen = 0;
  for (const auto& [v, c] : e.coeffs()) {
    if (counters.count(v)) {
      ++bound_seen;
      if (c != 1 && c != -1) return false;
    } else if (param && v == *param) {
      // any integer coefficient allowed on the parameter
    } else {
      return false;  // a second free variable
    }
  }
  return bound_seen <= 1;
}

// Iteration bound shapes per Def. 2.9 clause 3: lower alpha*n+beta, upper
// gamma*n+delta+eps*j with eps in {-1,0,1} and j bound.
bool lower_bound_ok(const LinExpr& e, const std::set<std::string>& counters,
                    const std::optional<std::string>& param) {
  for (const auto& [v, c] : e.coeffs()) {
    if (counters.count(v)) return false;
    if (!param || v != *param) return false;
  }
  return true;
}

bool upper_bound_ok(const LinExpr& e, const std::set<std::string>& counters,
                    const std::optional<std::string>& param) {
  int bound_seen = 0;
  for (const auto& [v, c] : e.coeffs()) {
    if (counters.count(v)) {
      ++bound_seen;
      if (c != 1 && c != -1) return false;
    } else if (param && v == *param) {
    } else {
      return false;
    }
  }
  return bound_seen <= 1;
}

}  // namespace

ClassReport classify(const Schema& phi) {
  ClassReport rep;
  std::set<std::string> params = free_vars(phi);
  std::set<std::string> counters;
  collect_counters(phi, counters);

  rep.single_parameter = params.size() <= 1;
  std::optional<std::string> param;
  if (params.size() == 1) param = *params.begin();

  // ---- bound-linear (Def. 2.9) ----
  rep.is_bound_linear = true;
  if (params.size() > 1) {
    rep.is_bound_linear = false;
    rep.bound_linear_violation = "more than one parameter";
  }

  std::function<void(const Schema&)> check_bl = [&](const Schema& s) {
    if (!rep.is_bound_linear) return;
    switch (s->kind) {
      case SchemaNode::Kind::Atom:
        if (!index_ok(s->index, counters, param)) {
          rep.is_bound_linear = false;
          rep.bound_linear_violation = "atom " + schema_str(s);
        }
        return;
      case SchemaNode::Kind::And:
      case SchemaNode::Kind::Or:
        for (const auto& x : s->items) check_bl(x);
        return;
      case SchemaNode::Kind::BigAnd:
      case SchemaNode::Kind::BigOr:
        if (!lower_bound_ok(s->lo, counters, param) ||
            !upper_bound_ok(s->hi, counters, param)) {
          rep.is_bound_linear = false;
          rep.bound_linear_violation =
              "iteration bounds [" + s->lo.str() + ", " + s->hi.str() + "]";
          return;
        }
        check_bl(s->body);
        return;
      default:
        return;
    }
  };
  check_bl(phi);

  // ---- regular (Def. 4.1) ----
  rep.flat = true;
  rep.bounded_propagation = true;
  rep.aligned = true;
  std::optional<std::pair<LinExpr, LinExpr>> bounds_seen;
  std::optional<Int> prop_min, prop_max;
  std::string viol;

  std::function<void(const Schema&, const std::string*)> check_reg =
      [&](const Schema& s, const std::string* enclosing_counter) {
        switch (s->kind) {
          case SchemaNode::Kind::Atom: {
            if (!enclosing_counter) return;
            // inside an iteration: index must be i + gamma
            const LinExpr& e = s->index;
            bool ok = e.coeffs().size() == 1 &&
                      e.coeffs().begin()->first == *enclosing_counter &&
                      e.coeffs().begin()->second == 1;
            if (!ok) {
              rep.bounded_propagation = false;
              if (viol.empty()) viol = "atom " + schema_str(s) + " inside iteration";
            } else {
              Int g = e.constant_term();
              if (!prop_min || g < *prop_min) prop_min = g;
              if (!prop_max || g > *prop_max) prop_max = g;
            }
            return;
          }
          case SchemaNode::Kind::And:
          case SchemaNode::Kind::Or:
            for (const auto& x : s->items) check_reg(x, enclosing_counter);
            return;
          case SchemaNode::Kind::BigAnd:
          case SchemaNode::Kind::BigOr: {
            if (enclosing_counter) {
              rep.flat = false;
              if (viol.empty()) viol = "nested iteration";
              return;
            }
            if (bounds_seen) {
              if (!(bounds_seen->first == s->lo && bounds_seen->second == s->hi)) {
                rep.aligned = false;
                if (viol.empty())
                  viol = "iteration bounds [" + s->lo.str() + ", " + s->hi.str() +
                         "] differ from [" + bounds_seen->first.str() + ", " +
                         bounds_seen->second.str() + "]";
              }
            } else {
              bounds_seen = {s->lo, s->hi};
            }
            check_reg(s->body, &s->counter);
            return;
          }
          default:
            return;
        }
      };
  check_reg(phi, nullptr);

  // Shared bounds must be of shape [alpha, n - beta].
  std::optional<std::pair<Int, Int>> align;
  if (bounds_seen && rep.aligned) {
    const LinExpr& lo = bounds_seen->first;
    const LinExpr& hi = bounds_seen->second;
    bool lo_ok = lo.is_constant();
    bool hi_ok = param && hi.coeffs().size() == 1 &&
                 hi.coeffs().begin()->first == *param &&
                 hi.coeffs().begin()->second == 1;
    if (lo_ok && hi_ok) {
      align = {lo.constant_term(), -hi.constant_term()};
    } else {
      rep.aligned = false;
      if (viol.empty())
        viol = "iterations not aligned on [alpha, n-beta]: [" + lo.str() + ", " +
               hi.str() + "]";
    }
  }

  rep.is_regular = rep.single_parameter && rep.flat && rep.bounded_propagation &&
                   rep.aligned;
  if (!rep.single_parameter && viol.empty()) viol = "more than one parameter";
  rep.regular_violation = rep.is_regular ? "" : viol;
  if (rep.is_regular) {
    if (prop_min)
      rep.propagation_limits = {*prop_min, *prop_max};
    else if (bounds_seen)
      rep.propagation_limits = {Int(0), Int(0)};
    if (align) rep.alignment = align;
  }
  return rep;
}

std::string ClassReport::str() const {
  std::ostringstream os;
  os << "bound-linear: " << (is_bound_linear ? "yes" : "no");
  if (!is_bound_linear) os << " (" << bound_linear_violation << ")";
  os << "\n";
  os << "regular: " << (is_regular ? "yes" : "no");
  if (!is_regular) os << " (" << regular_violation << ")";
  os << "\n";
  os << "  flat: " << (flat ? "yes" : "no")
     << ", bounded propagation: " << (bounded_propagation ? "yes" : "no")
     << ", aligned: " << (aligned ? "yes" : "no")
     << ", single parameter: " << (single_parameter ? "yes" : "no") << "\n";
  if (propagation_limits)
    os << "  propagation limits: [" << propagation_limits->first.str() << ", "
       << propagation_limits->second.str() << "]\n";
  if (alignment)
    os << "  aligned on [" << alignment->first.str() << ", n-"
       << alignment->second.str() << "]\n";
  return os.str();
}

}  // namespace stab
