#include <iostream>

#include <CLI11.hpp>

#include "stab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"benchmark runner: name<TAB>verdict<TAB>millis"};
  std::string manifest = "benchmarks/manifest.tsv";
  std::string filter = "desk";
  stab::Limits limits;
  app.add_option("--manifest", manifest, "manifest path");
  app.add_option("--filter", filter, "desk | all")
      ->check(CLI::IsMember({"desk", "all"}));
  app.add_option("--max-unfold", limits.max_unfold, "unfolding limit");
  app.add_option("--budget", limits.node_budget, "node budget");
  CLI11_PARSE(app, argc, argv);

  try {
    auto cases = stab::read_manifest(manifest);
    auto results = stab::bench_suite(cases, filter == "desk", limits);
    std::cout << stab::bench_tsv(results);
    int bad = 0;
    for (const auto& r : results) {
      if (!r.ok) {
        std::cerr << "MISMATCH: " << r.bench.name << " expected "
                  << r.bench.expected << " got " << r.verdict << "\n";
        ++bad;
      }
    }
    return bad == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
