// randsurf: command-line front end for the random-surface lab.
// Exit codes: 0 ok, 2 bad arguments or violated preconditions, 1 internal error.

#include "randsurf/harness/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using randsurf::harness::ExperimentConfig;
using randsurf::harness::OutputFormat;

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"json", OutputFormat::json},
                                                                              {"csv", OutputFormat::csv}})
                      .description(""))
      ->type_name("json|csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random surfaces from 2N ideal triangles: spectrum counts, Poisson statistics, bounds"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::string out_path;
  app.add_option("--out", out_path, "write the report here instead of stdout");

  auto* words = app.add_subcommand("words", "census of word classes");
  words->add_option("--max-len,--max-word-len", cfg.max_word_len, "all classes up to this length")
      ->check(CLI::Range(std::size_t{1}, randsurf::kMaxEnumerationLength));
  words->add_option("--max-trace", cfg.max_trace, "classes W(k) with 3 <= trace <= k")
      ->check(CLI::Range(std::uint64_t{3}, std::uint64_t{randsurf::kMaxCensusTrace}));

  auto* stats = app.add_subcommand("stats", "Monte Carlo statistics of class counts");
  auto* bound = app.add_subcommand("bound", "Chen-Stein bounds for a class set");
  auto* oracle = app.add_subcommand("oracle", "exact joint law by enumerating every gluing");
  auto* spectrum = app.add_subcommand("spectrum", "cycle counts of one explicit gluing");

  for (auto* sub : {stats, bound, oracle, spectrum}) {
    sub->add_option("--n", cfg.n, "N (the surface has 2N triangles)")->required();
    sub->add_option("--max-word-len", cfg.max_word_len, "all classes up to this length");
  }
  for (auto* sub : {stats, bound, oracle}) {
    sub->add_option("--classes", cfg.classes, "comma-separated words, e.g. LR,LLR");
    sub->add_option("--max-trace", cfg.max_trace, "use W(k)");
  }
  for (auto* sub : {stats, oracle}) sub->add_option("--workers", cfg.workers, "threads")->check(CLI::PositiveNumber);
  stats->add_option("--samples", cfg.samples, "sample count M")->check(CLI::PositiveNumber);
  stats->add_option("--seed", cfg.seed, "base seed; sample i uses stream (seed, i)");
  oracle->add_flag("--allow-n3", cfg.allow_n3, "permit the N = 3 enumeration (34 459 425 gluings)");
  spectrum->add_option("--gluing", cfg.gluing, "pairs a-b,c-d,... covering 1..6N")->required();
  for (auto* sub : {words, stats, bound, oracle, spectrum}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const std::string report = randsurf::harness::run_command(cfg);
    if (out_path.empty()) {
      std::cout << report;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << out_path << '\n';
        return 1;
      }
      file << report;
    }
    return 0;
  } catch (const randsurf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
