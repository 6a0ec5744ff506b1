#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stab/dimacs.hpp"
#include "stab/engine.hpp"
#include "stab/parser.hpp"
#include "stab/propsat.hpp"
#include "stab/surface.hpp"
#include "stab/tau.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;
constexpr int kExitError = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

stab::Schema load_schema(const std::string& path, stab::SourceSpec* spec_out) {
  std::string text = read_file(path);
  try {
    stab::SourceSpec spec = stab::parse(text);
    if (spec_out) *spec_out = spec;
    return stab::desugar(spec);
  } catch (const stab::ParseError& e) {
    std::cerr << path << ":" << e.line << ":" << e.col << ": error: " << e.what()
              << "\n";
    std::exit(kExitError);
  } catch (const std::exception& e) {
    std::cerr << path << ":1:1: error: " << e.what() << "\n";
    std::exit(kExitError);
  }
}

void print_model(const stab::Interpretation& m) {
  std::cout << "model:\n";
  for (const auto& [p, v] : m.params)
    std::cout << "  " << p << " = " << v.str() << "\n";
  for (const auto& [key, val] : m.props) {
    if (!val) continue;
    std::cout << "  " << key.first << "_" << key.second.str() << " = true\n";
  }
  std::cout << "  (all other propositional variables false)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satisfiability of propositional iterated schemata"};
  app.require_subcommand(1);

  std::string file;
  stab::Limits limits;
  bool verbose = false, want_model = false, no_pure = false;

  auto add_limit_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-unfold", limits.max_unfold,
                    "iteration unfolding limit per branch");
    cmd->add_option("--max-shift", limits.max_shift,
                    "largest shift decrement tried by the looping check");
    cmd->add_option("--budget", limits.node_budget, "tableau node budget");
    cmd->add_flag("--no-pure-literal", no_pure,
                  "disable the pure-literal clause of the looping check");
  };

  auto* check = app.add_subcommand("check", "decide satisfiability");
  check->add_option("file", file, "input schema file")->required();
  check->add_flag("--verbose", verbose, "print search statistics and lemmas");
  check->add_flag("--model", want_model, "print a model when satisfiable");
  add_limit_flags(check);

  auto* expand = app.add_subcommand("expand", "expand an instance to DIMACS");
  long long n_value = -1;
  std::string out_path;
  expand->add_option("file", file, "input schema file")->required();
  expand->add_option("--n", n_value, "parameter value")->required();
  expand->add_option("--out", out_path, "output path (default stdout)");

  auto* regularize = app.add_subcommand(
      "regularize", "classify and compile to regular form");
  regularize->add_option("file", file, "input schema file")->required();

  auto* brute = app.add_subcommand("brute", "brute-force model search");
  long long brute_max = 6;
  brute->add_option("file", file, "input schema file")->required();
  brute->add_option("--max", brute_max, "largest parameter value tried");

  CLI11_PARSE(app, argc, argv);
  limits.pure_literal = !no_pure;

  try {
    if (check->parsed()) {
      stab::SourceSpec spec;
      stab::Schema phi = load_schema(file, &spec);
      stab::DecideResult d = stab::decide(phi, limits);
      if (verbose) {
        std::cout << "Conjecture:\n" << stab::surface_str(spec.goal) << "\n\n";
        for (const auto& line : d.pipeline) std::cout << "note: " << line << "\n";
        std::cout << d.result.stats.block_str() << "\n";
        std::cout << stab::tableau_dump(d.result);
      }
      switch (d.result.kind) {
        case stab::VerdictKind::Sat:
          std::cout << "SATISFIABLE\n";
          if (want_model) {
            if (d.original_model)
              print_model(*d.original_model);
            else {
              std::cout << "(model of the compiled schema; no verified mapping "
                           "back to the source)\n";
              print_model(d.result.model);
            }
          }
          return kExitSat;
        case stab::VerdictKind::Unsat:
          std::cout << "UNSATISFIABLE\n";
          return kExitUnsat;
        case stab::VerdictKind::Unknown:
          std::cout << "UNKNOWN (" << d.result.resource_report << ")\n";
          return kExitUnknown;
      }
    }

    if (expand->parsed()) {
      stab::Schema phi = load_schema(file, nullptr);
      if (n_value < 0) {
        std::cerr << file << ":1:1: error: --n must be nonnegative\n";
        return kExitError;
      }
      stab::DimacsOutput out = stab::to_dimacs(phi, stab::Int(n_value));
      if (out_path.empty()) {
        std::cout << out.text;
      } else {
        std::ofstream os(out_path);
        if (!os) {
          std::cerr << out_path << ":1:1: error: cannot write output\n";
          return kExitError;
        }
        os << out.text;
      }
      return 0;
    }

    if (regularize->parsed()) {
      stab::Schema phi = load_schema(file, nullptr);
      stab::ClassReport rep = stab::classify(phi);
      std::cout << rep.str();
      if (!rep.is_bound_linear) return 0;
      stab::Schema norm = stab::normalize_even(phi);
      std::cout << "normalized:\n  " << stab::schema_str(norm) << "\n";
      stab::TauResult tr = stab::tau_transform(norm);
      std::cout << "regular form:\n  " << stab::schema_str(tr.schema) << "\n";
      stab::ClassReport rep2 = stab::classify(tr.schema);
      std::cout << "result " << (rep2.is_regular ? "is" : "IS NOT") << " regular\n";
      std::cout << "trace (" << tr.trace.size() << " steps):\n";
      for (const auto& line : tr.trace) std::cout << "  " << line << "\n";
      return 0;
    }

    if (brute->parsed()) {
      stab::Schema phi = load_schema(file, nullptr);
      auto r = stab::naive_enumerate(phi, stab::Int(brute_max));
      if (r) {
        std::cout << "FOUND";
        for (const auto& [p, v] : r->params)
          std::cout << " " << p << "=" << v.str();
        std::cout << "\n";
        for (const auto& [key, val] : r->props)
          if (val)
            std::cout << "  " << key.first << "_" << key.second.str()
                      << " = true\n";
        return kExitSat;
      }
      std::cout << "NONE (no model with parameters <= " << brute_max << ")\n";
      return kExitUnknown;
    }
  } catch (const std::exception& e) {
    std::cerr << file << ":1:1: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
