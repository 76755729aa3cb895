#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "phylosub/harness.hpp"

namespace {

std::size_t default_parallel(std::size_t replicates) {
  const std::size_t cores = std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
  return std::clamp<std::size_t>(replicates, 1, cores);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary search with phylogeny-informed subsampling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t replicates = 1;
  std::uint64_t seed_base = 1;
  std::size_t parallel = 0;
  CLI::App* run = app.add_subcommand("run", "Run replicated experiments from a config file");
  run->add_option("--config", config_path, "Flat key=value config file")->required();
  run->add_option("--replicates", replicates, "Replicate count (replicate r uses seed-base + r)");
  run->add_option("--seed-base", seed_base, "Base seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--parallel", parallel,
                  "Replicate-level workers; defaults to replicate count capped by cores");

  std::vector<std::string> summary_files;
  CLI::App* compare =
      app.add_subcommand("compare", "Aggregate summary.csv rows by condition to stdout");
  compare->add_option("files", summary_files, "summary.csv files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      phylosub::RunManifest manifest;
      manifest.base = phylosub::load_config_file(config_path);
      manifest.replicates = replicates;
      manifest.seed_base = seed_base;
      manifest.out_dir = out_dir;
      manifest.parallel = parallel == 0 ? default_parallel(replicates) : parallel;
      phylosub::run_manifest(manifest);
    } else {
      std::cout << phylosub::compare_summaries(summary_files);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
