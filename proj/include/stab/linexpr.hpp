#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "stab/ints.hpp"

namespace stab {

// A normalized linear integer expression: sum of coeff*var plus a constant.
// Expressions equal under the arithmetic laws have identical representation;
// no zero coefficient is ever stored.
class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(Int constant) : k_(std::move(constant)) {}

  static LinExpr constant(Int v) { return LinExpr(std::move(v)); }
  static LinExpr var(const std::string& name, Int coeff = 1);

  const std::map<std::string, Int>& coeffs() const { return coeffs_; }
  const Int& constant_term() const { return k_; }

  bool is_constant() const { return coeffs_.empty(); }
  Int coeff(const std::string& name) const;

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr operator-() const;
  LinExpr operator*(const Int& s) const;
  LinExpr operator+(const Int& c) const { return *this + LinExpr(c); }
  LinExpr operator-(const Int& c) const { return *this - LinExpr(c); }

  bool operator==(const LinExpr& o) const {
    return k_ == o.k_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const LinExpr& o) const { return !(*this == o); }
  bool operator<(const LinExpr& o) const;  // arbitrary total order

  // Replaces variables by expressions; variables absent from the map stay.
  LinExpr subst(const std::map<std::string, LinExpr>& sigma) const;

  // Evaluates under a total assignment; missing variables default to 0.
  Int eval(const std::map<std::string, Int>& env) const;

  void collect_vars(std::set<std::string>& out) const;
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }

  std::string str() const;

 private:
  std::map<std::string, Int> coeffs_;
  Int k_ = 0;
};

}  // namespace stab
