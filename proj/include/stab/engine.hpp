#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stab/classify.hpp"
#include "stab/schema.hpp"
#include "stab/tau.hpp"

namespace stab {

struct Limits {
  int max_unfold = 64;
  int max_shift = 0;  // 0: use the leaf's unfolding count
  long node_budget = 500000;
  bool pure_literal = true;  // test hook: the purity clause of the looping check
};

struct Shift {
  std::map<std::string, Int> dec;  // parameter -> decrement (>= 0, one > 0)
  std::string str() const;
};

enum class NodeStatus { Open, Closed, Blocked, SatLeaf, Exhausted };

struct NodeRec {
  int id = 0;
  int parent = -1;
  std::vector<int> children;
  std::vector<Schema> formulas;  // canonically sorted set
  NodeStatus status = NodeStatus::Open;
  int companion = -1;  // blocked: the node this leaf loops on
  Shift shift;
  int unfold_count = 0;
  std::string rule;  // rule that produced this node
  std::set<std::string> emitted_diseq;  // closure-rule dedup along the branch
  bool expanded = false;
};

struct ProofStats {
  long and_rule = 0, or_rule = 0, iter_and = 0, iter_or = 0, closure = 0;
  long closed_leaves = 0, looping_leaves = 0, lemmas = 0, max_unfold = 0;
  std::string block_str() const;  // the nine counter lines
};

enum class VerdictKind { Sat, Unsat, Unknown };

struct RunResult {
  VerdictKind kind = VerdictKind::Unknown;
  Interpretation model;  // Sat
  ProofStats stats;
  std::vector<NodeRec> tableau;
  std::string resource_report;  // Unknown
};

// The arithmetic formula that is valid exactly when phi*sigma and psi*sigma
// are syntactically identical (structural recursion; mismatched shapes give
// false).
ArithFormula unif_formula(const Schema& phi, const Schema& psi);

// True iff no occurrence of the complementary literal anywhere in phis can
// share a concrete index with lit, modulo the branch constraints and the
// interval constraints of the set.
bool is_pure_literal(const Schema& lit, const std::vector<Schema>& phis,
                     const std::set<std::string>& params);

// Inclusion up to shift: finds a shift sigma such that every companion
// formula is arithmetic and entailed after shifting, or a pure literal, or
// present in the bud set after shifting.
std::optional<Shift> loop_check(const std::vector<Schema>& bud,
                                const std::vector<Schema>& companion,
                                int max_shift,
                                const std::set<std::string>& params,
                                bool pure_literal_enabled = true);

RunResult run(const Schema& phi, const Limits& limits = {});

Interpretation extract_model(const std::vector<Schema>& leaf_formulas,
                             const std::set<std::string>& params);

// Full decision pipeline: regular schemata go to the tableau directly,
// bound-linear ones are normalized and compiled to regular form first,
// anything else runs unchanged (termination not guaranteed).
struct DecideResult {
  RunResult result;
  bool transformed = false;
  ClassReport report;
  std::vector<std::string> pipeline;  // human-readable stage notes
  std::optional<Interpretation> original_model;  // backmapped and verified
};

DecideResult decide(const Schema& phi, const Limits& limits = {});

std::string tableau_dump(const RunResult& r);

}  // namespace stab
