#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apal/designer.hpp"
#include "apal/meanfield.hpp"
#include "apal/version_space.hpp"

namespace apal {

enum class Mode { passive, design, design_ortho, exact_small, exact_passive_small, deductive };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);
bool is_exact(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::passive;
  std::size_t n = 99;
  double alpha_max = 1.0;
  std::size_t runs = 1;
  std::uint64_t master_seed = 1;
  UpdateParams update;
  AnnealSchedule schedule;
  double lambda = 1.0;
  std::optional<std::size_t> memory;  // defaults to N - 1
  StatsOptions stats;
  BisectOptions bisect;
  std::filesystem::path out_dir = "out";
  int threads = 0;  // 0: OpenMP default
};

// Throws UsageError describing the first violated constraint.
void validate(const ExperimentConfig& cfg);

// Number of labelled patterns per trajectory: ceil(alpha_max * N), and for
// deductive mode at least the worst-case query count.
std::size_t trajectory_length(const ExperimentConfig& cfg);

/// State of one trajectory after its first `p` training patterns.
struct StepRecord {
  std::size_t p = 0;
  std::size_t queries = 0;     // audited oracle count
  std::size_t mismatches = 0;  // entries where the inferred vector differs from the teacher
  std::optional<double> entropy_density;
  std::optional<double> gen_error;
  std::uint64_t vs_size = 0;            // exact modes only
  std::optional<double> design_energy;  // anneal final energy, or bisection imbalance
  bool duplicate = false;               // pattern equal to an earlier training pattern

  bool success() const { return mismatches == 0; }
};

// Records for p = 0 .. trajectory_length(cfg). Deterministic in (cfg, seed).
std::vector<StepRecord> run_trajectory(const ExperimentConfig& cfg, std::uint64_t seed);

struct MetricsRow {
  std::string mode;
  std::size_t n = 0;
  std::size_t p = 0;
  double alpha = 0.0;
  double mean_error = 0.0;
  double success_fraction = 0.0;
  std::optional<double> entropy_density;
  std::optional<double> gen_error;
  std::optional<double> mean_queries;
  std::size_t runs = 0;
};

// Invoked in run order with every finished trajectory.
using TrajectoryObserver =
    std::function<void(std::size_t run, const std::vector<StepRecord>& steps)>;

// Trajectory k uses seed child_seed(master_seed, k). Trajectories run in
// parallel; reduction is in run order, so rows do not depend on thread count.
std::vector<MetricsRow> run_ensemble(const ExperimentConfig& cfg,
                                     const TrajectoryObserver& observer = {});

// Same result computed on one thread; reference for the parallel runner.
std::vector<MetricsRow> run_ensemble_serial(const ExperimentConfig& cfg,
                                            const TrajectoryObserver& observer = {});

// Index of the first row (in p order) with success_fraction >= threshold.
std::optional<std::size_t> success_onset(const std::vector<MetricsRow>& rows,
                                         double threshold = 0.5);

inline constexpr std::string_view kCsvHeader =
    "mode,n,p,alpha,mean_error,success_fraction,entropy_density,gen_error,mean_queries,runs";

// Canonical CSV text: rows sorted by (mode, n, p), shortest round-trip reals.
std::string format_csv(std::vector<MetricsRow> rows);

// Writes format_csv(rows) to path. Throws std::runtime_error naming the path on failure.
void emit_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

// Parses text produced by format_csv.
std::vector<MetricsRow> parse_csv(std::string_view text);

}  // namespace apal
