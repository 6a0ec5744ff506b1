#include "stab/linexpr.hpp"

#include <sstream>

namespace stab {

LinExpr LinExpr::var(const std::string& name, Int coeff) {
  LinExpr e;
  if (coeff != 0) e.coeffs_[name] = std::move(coeff);
  return e;
}

Int LinExpr::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Int(0) : it->second;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr r = *this;
  r.k_ += o.k_;
  for (const auto& [v, c] : o.coeffs_) {
    Int nc = r.coeff(v) + c;
    if (nc == 0)
      r.coeffs_.erase(v);
    else
      r.coeffs_[v] = nc;
  }
  return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + (-o); }

LinExpr LinExpr::operator-() const {
  LinExpr r;
  r.k_ = -k_;
  for (const auto& [v, c] : coeffs_) r.coeffs_[v] = -c;
  return r;
}

LinExpr LinExpr::operator*(const Int& s) const {
  LinExpr r;
  if (s == 0) return r;
  r.k_ = k_ * s;
  for (const auto& [v, c] : coeffs_) r.coeffs_[v] = c * s;
  return r;
}

bool LinExpr::operator<(const LinExpr& o) const {
  if (coeffs_ != o.coeffs_) return coeffs_ < o.coeffs_;
  return k_ < o.k_;
}

LinExpr LinExpr::subst(const std::map<std::string, LinExpr>& sigma) const {
  LinExpr r(k_);
  for (const auto& [v, c] : coeffs_) {
    auto it = sigma.find(v);
    if (it == sigma.end())
      r = r + LinExpr::var(v, c);
    else
      r = r + it->second * c;
  }
  return r;
}

Int LinExpr::eval(const std::map<std::string, Int>& env) const {
  Int r = k_;
  for (const auto& [v, c] : coeffs_) {
    auto it = env.find(v);
    if (it != env.end()) r += c * it->second;
  }
  return r;
}

void LinExpr::collect_vars(std::set<std::string>& out) const {
  for (const auto& [v, c] : coeffs_) out.insert(v);
}

std::string LinExpr::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (first) {
      if (c == 1)
        os << v;
      else if (c == -1)
        os << "-" << v;
      else
        os << c.str() << "*" << v;
      first = false;
    } else {
      if (c > 0)
        os << "+";
      if (c == 1)
        os << v;
      else if (c == -1)
        os << "-" << v;
      else
        os << c.str() << "*" << v;
    }
  }
  if (first) {
    os << k_.str();
  } else if (k_ > 0) {
    os << "+" << k_.str();
  } else if (k_ < 0) {
    os << k_.str();
  }
  return os.str();
}

}  // namespace stab
