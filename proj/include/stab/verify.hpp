#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stab/engine.hpp"
#include "stab/propsat.hpp"

namespace stab {

// One differential record: the tableau verdict against brute-force
// enumeration up to K. An Unknown verdict is recorded but never counts as a
// disagreement.
struct DiffEntry {
  Schema schema;
  VerdictKind verdict;
  bool brute_found = false;
  IntAssignment brute_params;
  bool agree = true;
  std::string detail;
};

DiffEntry differential_check(const Schema& phi, const Int& k,
                             const Limits& limits = {});

struct BenchCase {
  std::string name;
  std::string file;
  std::string expected;  // SAT | UNSAT
  bool desk = true;
};

struct BenchResult {
  BenchCase bench;
  std::string verdict;
  long millis = 0;
  bool ok = false;
};

// Reads a manifest of tab-separated lines: name, file, expected, desk|slow.
std::vector<BenchCase> read_manifest(const std::string& path);

// Runs each case through the full decision pipeline and checks the verdict.
std::vector<BenchResult> bench_suite(const std::vector<BenchCase>& cases,
                                     bool desk_only, const Limits& limits = {});

std::string bench_tsv(const std::vector<BenchResult>& results);

}  // namespace stab
