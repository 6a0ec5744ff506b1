#include "stab/verify.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "stab/parser.hpp"

namespace stab {

DiffEntry differential_check(const Schema& phi, const Int& k,
                             const Limits& limits) {
  DiffEntry e;
  e.schema = phi;
  RunResult r = run(phi, limits);
  e.verdict = r.kind;
  auto brute = naive_enumerate(phi, k);
  e.brute_found = brute.has_value();
  if (brute) e.brute_params = brute->params;

  switch (r.kind) {
    case VerdictKind::Sat: {
      bool model_ok = false;
      try {
        model_ok = eval_schema(phi, r.model);
      } catch (const std::exception& ex) {
        e.detail = ex.what();
      }
      if (!model_ok) {
        e.agree = false;
        if (e.detail.empty()) e.detail = "returned model does not satisfy the schema";
      }
      break;
    }
    case VerdictKind::Unsat:
      if (brute) {
        e.agree = false;
        std::ostringstream os;
        os << "tableau says UNSAT but brute force found a model at";
        for (const auto& [p, v] : brute->params) os << " " << p << "=" << v.str();
        e.detail = os.str();
      }
      break;
    case VerdictKind::Unknown:
      e.detail = "unknown: " + r.resource_report;
      break;
  }
  return e;
}

std::vector<BenchCase> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  std::vector<BenchCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    BenchCase c;
    std::string desk;
    if (!std::getline(ls, c.name, '\t')) continue;
    std::getline(ls, c.file, '\t');
    std::getline(ls, c.expected, '\t');
    std::getline(ls, desk, '\t');
    c.desk = desk != "slow";
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BenchResult> bench_suite(const std::vector<BenchCase>& cases,
                                     bool desk_only, const Limits& limits) {
  std::vector<BenchResult> out;
  for (const auto& c : cases) {
    if (desk_only && !c.desk) continue;
    BenchResult r;
    r.bench = c;
    std::ifstream in(c.file);
    if (!in) {
      r.verdict = "MISSING-FILE";
      out.push_back(std::move(r));
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto t0 = std::chrono::steady_clock::now();
    try {
      SourceSpec spec = parse(buf.str());
      Schema phi = desugar(spec);
      DecideResult d = decide(phi, limits);
      switch (d.result.kind) {
        case VerdictKind::Sat: r.verdict = "SAT"; break;
        case VerdictKind::Unsat: r.verdict = "UNSAT"; break;
        case VerdictKind::Unknown: r.verdict = "UNKNOWN"; break;
      }
    } catch (const std::exception& ex) {
      r.verdict = std::string("ERROR: ") + ex.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    r.ok = r.verdict == c.expected;
    out.push_back(std::move(r));
  }
  return out;
}

std::string bench_tsv(const std::vector<BenchResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << r.bench.name << "\t" << r.verdict << "\t" << r.millis << "\n";
  return os.str();
}

}  // namespace stab
