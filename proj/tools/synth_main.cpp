// Writes the shipped synthetic corpora as CSV, for demos and benchmarks.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "aztext/corpus.hpp"
#include "aztext/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic fixture corpora"};
  std::string kind = "benchmark";
  std::string output;
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--kind", kind, "separable|benchmark")->capture_default_str();
  app.add_option("--output", output, "CSV path to write")->required();
  app.add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
  CLI11_PARSE(app, argc, argv);

  try {
    aztext::Corpus corpus;
    if (kind == "separable") {
      corpus = seed_given ? aztext::make_separable_fixture(seed)
                          : aztext::make_separable_fixture();
    } else if (kind == "benchmark") {
      corpus = seed_given ? aztext::make_benchmark_corpus(seed)
                          : aztext::make_benchmark_corpus();
    } else {
      std::fprintf(stderr, "error: unknown kind: %s\n", kind.c_str());
      return 2;
    }
    aztext::write_csv(output, corpus);
    std::fprintf(stderr, "%zu documents -> %s\n", corpus.documents.size(), output.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
