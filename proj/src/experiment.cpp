#include "apal/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "apal/deductive.hpp"
#include "apal/errors.hpp"

namespace apal {

namespace {

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::passive, "passive"},
    {Mode::design, "design"},
    {Mode::design_ortho, "design-ortho"},
    {Mode::exact_small, "exact-small"},
    {Mode::exact_passive_small, "exact-passive-small"},
    {Mode::deductive, "deductive"},
};

struct PatternHash {
  std::size_t operator()(const SpinVector& v) const {
    std::uint64_t h = v.size();
    for (auto w : v.words()) h = splitmix64(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

// Remembers every training pattern of a trajectory to flag repeats.
class DuplicateTracker {
 public:
  bool insert(const SpinVector& xi) { return !seen_.insert(xi).second; }

 private:
  std::unordered_set<SpinVector, PatternHash> seen_;
};

SpinVector sign_of_means(std::span<const double> means) {
  SpinVector out = SpinVector::all_plus(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (means[i] < 0.0) out.set(i, -1);
  }
  return out;
}

std::vector<StepRecord> run_meanfield(const ExperimentConfig& cfg, Rng& rng,
                                      TeacherOracle& oracle) {
  const std::size_t n = cfg.n;
  const std::size_t length = trajectory_length(cfg);
  const SpinVector& truth = oracle.reveal();
  BeliefState belief(n);
  const bool ortho = cfg.mode == Mode::design_ortho;
  DesignContext ctx(n, cfg.lambda, ortho ? cfg.memory : std::optional<std::size_t>{0});
  DuplicateTracker seen;

  std::vector<StepRecord> steps;
  steps.reserve(length + 1);
  steps.push_back({.p = 0, .queries = 0, .mismatches = hamming_distance(infer(belief), truth)});
  for (std::size_t p = 1; p <= length; ++p) {
    StepRecord rec;
    SpinVector xi;
    if (cfg.mode == Mode::passive) {
      xi = random_pattern(n, rng);
    } else {
      ctx.set_means(belief.means());
      AnnealResult annealed;
      if (ortho) {
        OrthogonalEnergy energy(ctx);
        annealed = anneal(energy, n, cfg.schedule, rng);
      } else {
        BasicEnergy energy(ctx);
        annealed = anneal(energy, n, cfg.schedule, rng);
      }
      xi = std::move(annealed.pattern);
      rec.design_energy = annealed.final_energy;
      rec.duplicate = seen.insert(xi);
    }
    const int label = oracle.classify(xi);
    belief.absorb(xi, label, cfg.update);
    if (ortho) ctx.remember(xi);
    rec.p = p;
    rec.queries = oracle.query_count();
    rec.mismatches = hamming_distance(infer(belief), truth);
    steps.push_back(rec);
  }
  return steps;
}

std::vector<StepRecord> run_exact(const ExperimentConfig& cfg, Rng& rng, Rng& aux,
                                  TeacherOracle& oracle) {
  const std::size_t n = cfg.n;
  const std::size_t length = trajectory_length(cfg);
  const SpinVector& truth = oracle.reveal();
  VersionSpace vs = VersionSpace::enumerate_initial(n);
  DuplicateTracker seen;

  auto snapshot = [&](std::size_t p) {
    const VSStats s = stats(vs, truth, cfg.stats, aux);
    StepRecord rec;
    rec.p = p;
    rec.queries = oracle.query_count();
    rec.mismatches = hamming_distance(sign_of_means(s.mean_weights), truth);
    rec.entropy_density = s.entropy_density;
    rec.gen_error = s.generalization_error;
    rec.vs_size = vs.size();
    return rec;
  };

  std::vector<StepRecord> steps;
  steps.reserve(length + 1);
  steps.push_back(snapshot(0));
  for (std::size_t p = 1; p <= length; ++p) {
    SpinVector xi;
    std::optional<double> design_energy;
    if (cfg.mode == Mode::exact_small) {
      BisectResult b = bisect_design(vs, rng, cfg.bisect);
      xi = std::move(b.pattern);
      design_energy = static_cast<double>(b.imbalance);
    } else {
      xi = random_pattern(n, rng);
    }
    const bool dup = seen.insert(xi);
    const int label = oracle.classify(xi);
    vs = vs.filter(xi, label);
    StepRecord rec = snapshot(p);
    rec.design_energy = design_energy;
    rec.duplicate = dup;
    steps.push_back(rec);
  }
  return steps;
}

std::vector<StepRecord> run_deductive_mode(const ExperimentConfig& cfg, Rng& rng,
                                           TeacherOracle& oracle) {
  const std::size_t length = trajectory_length(cfg);
  const SpinVector& truth = oracle.reveal();
  std::vector<StepRecord> steps;
  steps.reserve(length + 1);
  steps.push_back({.p = 0, .queries = 0,
                   .mismatches = hamming_distance(SpinVector::all_plus(cfg.n), truth)});
  const SpinVector xi_init = random_pattern(cfg.n, rng);
  // length >= the query bound, so every query gets a record.
  const auto result = run_deductive(oracle, xi_init, [&](std::size_t q, const SpinVector& est) {
    steps.push_back({.p = q, .queries = q, .mismatches = hamming_distance(est, truth)});
  });
  // The final weight is solved without a query; the last record reflects it.
  steps.back().mismatches = hamming_distance(result.estimate, truth);
  while (steps.size() <= length) {
    StepRecord rec = steps.back();
    rec.p = steps.size();
    steps.push_back(rec);
  }
  return steps;
}

struct Accumulator {
  std::uint64_t mismatches = 0;
  std::uint64_t successes = 0;
  std::uint64_t queries = 0;
  double entropy = 0.0;
  double gen = 0.0;
  bool has_exact = false;
};

std::vector<MetricsRow> ensemble(const ExperimentConfig& cfg, const TrajectoryObserver& observer,
                                 bool parallel) {
  validate(cfg);
  const std::size_t length = trajectory_length(cfg);
  std::vector<Accumulator> acc(length + 1);

  // Trajectories run in blocks so memory stays bounded; each block is reduced
  // in run order before the next starts.
  const std::size_t block = 256;
  std::vector<std::vector<StepRecord>> slots;
  for (std::size_t first = 0; first < cfg.runs; first += block) {
    const std::size_t count = std::min(block, cfg.runs - first);
    slots.assign(count, {});
    const auto count_signed = static_cast<std::ptrdiff_t>(count);
    if (parallel) {
      const int threads = cfg.threads > 0 ? cfg.threads : kernels::omp::max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::ptrdiff_t k = 0; k < count_signed; ++k) {
        slots[k] = run_trajectory(cfg, child_seed(cfg.master_seed, first + k));
      }
    } else {
      for (std::ptrdiff_t k = 0; k < count_signed; ++k) {
        slots[k] = run_trajectory(cfg, child_seed(cfg.master_seed, first + k));
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      const auto& steps = slots[k];
      for (std::size_t p = 0; p <= length; ++p) {
        const StepRecord& r = steps[p];
        Accumulator& a = acc[p];
        a.mismatches += r.mismatches;
        a.successes += r.success() ? 1 : 0;
        a.queries += r.queries;
        if (r.entropy_density) {
          a.has_exact = true;
          a.entropy += *r.entropy_density;
          a.gen += r.gen_error.value_or(0.0);
        }
      }
      if (observer) observer(first + k, steps);
    }
  }

  const auto runs = static_cast<double>(cfg.runs);
  const auto n = static_cast<double>(cfg.n);
  std::vector<MetricsRow> rows;
  rows.reserve(length + 1);
  for (std::size_t p = 0; p <= length; ++p) {
    const Accumulator& a = acc[p];
    MetricsRow row;
    row.mode = std::string(to_string(cfg.mode));
    row.n = cfg.n;
    row.p = p;
    row.alpha = static_cast<double>(p) / n;
    row.mean_error = static_cast<double>(a.mismatches) / (n * runs);
    row.success_fraction = static_cast<double>(a.successes) / runs;
    if (a.has_exact) {
      row.entropy_density = a.entropy / runs;
      row.gen_error = a.gen / runs;
    }
    row.mean_queries = static_cast<double>(a.queries) / runs;
    row.runs = cfg.runs;
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_real(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_optional(std::string& out, const std::optional<double>& v) {
  if (v) append_real(out, *v);
}

double parse_real(std::string_view field) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("malformed number '" + std::string(field) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view field) {
  std::size_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("malformed count '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Mode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

bool is_exact(Mode mode) { return mode == Mode::exact_small || mode == Mode::exact_passive_small; }

void validate(const ExperimentConfig& cfg) {
  if (cfg.n == 0 || cfg.n % 2 == 0) {
    throw UsageError("N must be a positive odd integer, got " + std::to_string(cfg.n));
  }
  if (cfg.runs < 1) throw UsageError("runs must be at least 1");
  if (!(cfg.alpha_max > 0.0) || !std::isfinite(cfg.alpha_max)) {
    throw UsageError("alpha-max must be positive");
  }
  if (is_exact(cfg.mode) && cfg.n > kEnumerationLimit) {
    throw UsageError(std::string(to_string(cfg.mode)) + " requires N <= " +
                     std::to_string(kEnumerationLimit));
  }
  if (!(cfg.update.w0 > 0.0)) throw UsageError("w0 must be positive");
  if (!(cfg.update.delta_floor > 0.0)) throw UsageError("delta floor must be positive");
  if (!(cfg.lambda >= 0.0)) throw UsageError("lambda must be non-negative");
  validate(cfg.schedule);
}

std::size_t trajectory_length(const ExperimentConfig& cfg) {
  // The small slack keeps products such as 0.1 * 30 from rounding up.
  auto length = static_cast<std::size_t>(
      std::ceil(cfg.alpha_max * static_cast<double>(cfg.n) - 1e-9));
  if (cfg.mode == Mode::deductive) length = std::max(length, deductive_query_bound(cfg.n));
  return length;
}

std::vector<StepRecord> run_trajectory(const ExperimentConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  Rng rng(seed);
  Rng aux(child_seed(seed, 1));
  TeacherOracle oracle(random_pattern(cfg.n, rng));
  switch (cfg.mode) {
    case Mode::passive:
    case Mode::design:
    case Mode::design_ortho:
      return run_meanfield(cfg, rng, oracle);
    case Mode::exact_small:
    case Mode::exact_passive_small:
      return run_exact(cfg, rng, aux, oracle);
    case Mode::deductive:
      return run_deductive_mode(cfg, rng, oracle);
  }
  throw UsageError("unknown mode");
}

std::vector<MetricsRow> run_ensemble(const ExperimentConfig& cfg,
                                     const TrajectoryObserver& observer) {
  return ensemble(cfg, observer, true);
}

std::vector<MetricsRow> run_ensemble_serial(const ExperimentConfig& cfg,
                                            const TrajectoryObserver& observer) {
  return ensemble(cfg, observer, false);
}

std::optional<std::size_t> success_onset(const std::vector<MetricsRow>& rows, double threshold) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].success_fraction >= threshold) return k;
  }
  return std::nullopt;
}

std::string format_csv(std::vector<MetricsRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    return std::tie(a.mode, a.n, a.p) < std::tie(b.mode, b.n, b.p);
  });
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.mode;
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.p) + ',';
    append_real(out, static_cast<double>(r.p) / static_cast<double>(r.n));
    out += ',';
    append_real(out, r.mean_error);
    out += ',';
    append_real(out, r.success_fraction);
    out += ',';
    append_optional(out, r.entropy_density);
    out += ',';
    append_optional(out, r.gen_error);
    out += ',';
    append_optional(out, r.mean_queries);
    out += ',' + std::to_string(r.runs) + '\n';
  }
  return out;
}

void emit_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw UsageError("no rows to write to " + path.string());
  const std::string text = format_csv(rows);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

std::vector<MetricsRow> parse_csv(std::string_view text) {
  std::vector<MetricsRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
      header = false;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 10) throw std::runtime_error("expected 10 CSV fields");
    auto optional_real = [](std::string_view s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_real(s);
    };
    MetricsRow r;
    r.mode = std::string(f[0]);
    r.n = parse_count(f[1]);
    r.p = parse_count(f[2]);
    r.alpha = parse_real(f[3]);
    r.mean_error = parse_real(f[4]);
    r.success_fraction = parse_real(f[5]);
    r.entropy_density = optional_real(f[6]);
    r.gen_error = optional_real(f[7]);
    r.mean_queries = optional_real(f[8]);
    r.runs = parse_count(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace apal
