#include "stab/dimacs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "stab/propsat.hpp"

namespace stab {

DimacsOutput to_dimacs(const Schema& phi, const Int& n_value) {
  auto params = free_vars(phi);
  if (params.size() > 1)
    throw std::runtime_error("to_dimacs: schema has more than one parameter");
  Substitution sigma;
  for (const auto& p : params) sigma[p] = LinExpr::constant(n_value);
  Schema inst = realize(phi, sigma);
  ClausifyResult cl = clausify(inst);

  std::ostringstream os;
  std::vector<std::pair<int, std::pair<std::string, Int>>> by_id;
  for (const auto& [key, id] : cl.var_ids) by_id.push_back({id, key});
  std::sort(by_id.begin(), by_id.end());
  DimacsOutput out;
  for (const auto& [id, key] : by_id) {
    os << "c var " << id << " = " << key.first << "_" << key.second.str() << "\n";
    out.vars.push_back(key);
  }
  os << "p cnf " << cl.nvars << " " << cl.clauses.size() << "\n";
  for (const auto& c : cl.clauses) {
    for (int lit : c) os << lit << " ";
    os << "0\n";
  }
  out.text = os.str();
  return out;
}

DimacsFile parse_dimacs(const std::string& text) {
  DimacsFile out;
  std::istringstream is(text);
  std::string line;
  int nclauses = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      hs >> p >> cnf >> out.nvars >> nclauses;
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> clause;
    int lit;
    while (ls >> lit) {
      if (lit == 0) break;
      clause.push_back(lit);
    }
    out.clauses.push_back(std::move(clause));
  }
  if (nclauses >= 0 && static_cast<size_t>(nclauses) != out.clauses.size())
    throw std::runtime_error("parse_dimacs: clause count mismatch");
  return out;
}

}  // namespace stab
