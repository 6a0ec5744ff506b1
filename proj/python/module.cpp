#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stab/dimacs.hpp"
#include "stab/engine.hpp"
#include "stab/parser.hpp"
#include "stab/propsat.hpp"
#include "stab/surface.hpp"
#include "stab/tau.hpp"

namespace py = pybind11;

namespace {

stab::Schema schema_of(const std::string& text) {
  return stab::desugar(stab::parse(text));
}

stab::Limits make_limits(int max_unfold, int max_shift, long budget,
                         bool pure_literal) {
  stab::Limits l;
  l.max_unfold = max_unfold;
  l.max_shift = max_shift;
  l.node_budget = budget;
  l.pure_literal = pure_literal;
  return l;
}

py::dict model_dict(const stab::Interpretation& m) {
  py::dict params, props;
  for (const auto& [p, v] : m.params) params[py::str(p)] = stab::to_long(v);
  for (const auto& [key, val] : m.props) {
    if (!val) continue;
    props[py::str(key.first + "_" + key.second.str())] = true;
  }
  py::dict out;
  out["params"] = params;
  out["true_atoms"] = props;
  return out;
}

py::dict check(const std::string& text, int max_unfold, int max_shift,
               long budget, bool pure_literal) {
  stab::Schema phi = schema_of(text);
  stab::DecideResult d =
      stab::decide(phi, make_limits(max_unfold, max_shift, budget, pure_literal));
  py::dict out;
  switch (d.result.kind) {
    case stab::VerdictKind::Sat: out["verdict"] = "SAT"; break;
    case stab::VerdictKind::Unsat: out["verdict"] = "UNSAT"; break;
    case stab::VerdictKind::Unknown: out["verdict"] = "UNKNOWN"; break;
  }
  out["transformed"] = d.transformed;
  py::dict stats;
  stats["and"] = d.result.stats.and_rule;
  stats["or"] = d.result.stats.or_rule;
  stats["iterated_and"] = d.result.stats.iter_and;
  stats["iterated_or"] = d.result.stats.iter_or;
  stats["closure"] = d.result.stats.closure;
  stats["closed_leaves"] = d.result.stats.closed_leaves;
  stats["looping_leaves"] = d.result.stats.looping_leaves;
  stats["lemmas"] = d.result.stats.lemmas;
  stats["max_unfold"] = d.result.stats.max_unfold;
  out["stats"] = stats;
  if (d.result.kind == stab::VerdictKind::Sat && d.original_model)
    out["model"] = model_dict(*d.original_model);
  return out;
}

std::string expand(const std::string& text, long n) {
  return stab::to_dimacs(schema_of(text), stab::Int(n)).text;
}

py::dict regularize(const std::string& text) {
  stab::Schema phi = schema_of(text);
  stab::ClassReport rep = stab::classify(phi);
  py::dict out;
  out["bound_linear"] = rep.is_bound_linear;
  out["regular"] = rep.is_regular;
  out["report"] = rep.str();
  if (rep.is_bound_linear) {
    stab::TauResult tr = stab::tau_transform(stab::normalize_even(phi));
    out["regular_form"] = stab::schema_str(tr.schema);
    out["regular_after"] = stab::classify(tr.schema).is_regular;
    out["steps"] = tr.trace.size();
  }
  return out;
}

py::dict brute(const std::string& text, long max_param) {
  stab::Schema phi = schema_of(text);
  auto r = stab::naive_enumerate(phi, stab::Int(max_param));
  py::dict out;
  out["found"] = r.has_value();
  if (r) {
    py::dict params;
    for (const auto& [p, v] : r->params) params[py::str(p)] = stab::to_long(v);
    out["params"] = params;
  }
  return out;
}

std::string roundtrip(const std::string& text) {
  return stab::spec_str(stab::parse(text));
}

}  // namespace

PYBIND11_MODULE(pystab, m) {
  m.doc() = "satisfiability of propositional iterated schemata";
  m.def("check", &check, py::arg("text"), py::arg("max_unfold") = 64,
        py::arg("max_shift") = 0, py::arg("budget") = 500000L,
        py::arg("pure_literal") = true,
        "decide satisfiability; returns a dict with verdict/stats/model");
  m.def("expand", &expand, py::arg("text"), py::arg("n"),
        "expand an instance to DIMACS CNF");
  m.def("regularize", &regularize, py::arg("text"),
        "classify and compile to regular form");
  m.def("brute", &brute, py::arg("text"), py::arg("max_param") = 6,
        "brute-force model search up to max_param");
  m.def("roundtrip", &roundtrip, py::arg("text"),
        "parse and pretty-print the input file");
}
