// apal: run teacher-student binary perceptron learning experiments.
//
//   apal <mode> --n <odd int> --alpha-max <real> --runs <int> --seed <u64> --out <dir>
//        [--w0 <real>] [--lambda <real>] [--memory <int>] [--beta0 <real>]
//        [--rbeta <real>] [--anneal-levels <int>] [--threads <int>] [--config <path>]
//
// Writes <out>/metrics_<mode>.csv and fig_*.svg. Exit code 2 on configuration errors.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apal/errors.hpp"
#include "apal/experiment.hpp"
#include "apal/figures.hpp"

namespace {

constexpr int kConfigError = 2;

std::string mode_list() {
  return "passive, design, design-ortho, exact-small, exact-passive-small, deductive";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active and passive online learning in the binary perceptron"};
  app.set_config("--config", "", "Plain-text key = value file; command-line flags override it");

  std::string mode_name;
  std::vector<std::size_t> sizes;
  apal::ExperimentConfig base;
  std::size_t memory = 0;
  std::string out_dir = "out";
  bool quiet = false;

  app.add_option("mode", mode_name, "One of: " + mode_list())->required();
  app.add_option("--n", sizes, "Input dimension (odd); a comma list runs several sizes")
      ->required()
      ->delimiter(',');
  app.add_option("--alpha-max", base.alpha_max, "Largest pattern density P/N")->required();
  app.add_option("--runs", base.runs, "Independent trajectories per size")->required();
  app.add_option("--seed", base.master_seed, "Master seed")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--w0", base.update.w0, "Escape weight for saturated means")
      ->capture_default_str();
  app.add_option("--lambda", base.lambda, "Orthogonality penalty strength")
      ->capture_default_str();
  auto* memory_opt =
      app.add_option("--memory", memory, "Recent patterns in the orthogonality penalty (N-1)");
  app.add_option("--beta0", base.schedule.beta0, "Initial inverse temperature")
      ->capture_default_str();
  app.add_option("--rbeta", base.schedule.r_beta, "Inverse temperature growth per level")
      ->capture_default_str();
  app.add_option("--anneal-levels", base.schedule.levels, "Annealing levels")
      ->capture_default_str();
  app.add_option("--threads", base.threads, "Worker threads (0 = OpenMP default)");
  app.add_flag("--quiet", quiet, "Only print output paths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  const auto mode = apal::parse_mode(mode_name);
  if (!mode) {
    std::cerr << "error: unknown mode '" << mode_name << "' (expected " << mode_list() << ")\n";
    return kConfigError;
  }
  base.mode = *mode;
  if (memory_opt->count() > 0) base.memory = memory;
  base.out_dir = out_dir;

  std::vector<apal::ExperimentConfig> configs;
  for (std::size_t n : sizes) {
    apal::ExperimentConfig cfg = base;
    cfg.n = n;
    try {
      apal::validate(cfg);
    } catch (const apal::UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kConfigError;
    }
    configs.push_back(cfg);
  }

  try {
    std::filesystem::create_directories(base.out_dir);
    std::vector<apal::MetricsRow> rows;
    for (const auto& cfg : configs) {
      const auto start = std::chrono::steady_clock::now();
      std::size_t duplicates = 0;
      auto part = apal::run_ensemble(cfg, [&](std::size_t, const auto& steps) {
        for (const auto& s : steps) duplicates += s.duplicate ? 1 : 0;
      });
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!quiet) {
        const auto& last = part.back();
        std::printf("%s N=%zu runs=%zu: alpha=%.4g mean_error=%.6g success=%.4g "
                    "duplicates=%zu (%.1fs)\n",
                    mode_name.c_str(), cfg.n, cfg.runs, last.alpha, last.mean_error,
                    last.success_fraction, duplicates, seconds);
      }
      rows.insert(rows.end(), part.begin(), part.end());
    }
    const auto csv = base.out_dir / ("metrics_" + mode_name + ".csv");
    apal::emit_csv(rows, csv);
    std::printf("%s\n", csv.string().c_str());
    for (const auto& path : apal::emit_figures(rows, base.out_dir)) {
      std::printf("%s\n", path.string().c_str());
    }
  } catch (const apal::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
