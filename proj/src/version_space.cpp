#include "apal/version_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "apal/errors.hpp"

namespace apal {

namespace k = kernels::omp;
using kernels::Code;

namespace {

Code code_of(const SpinVector& v) { return static_cast<Code>(v.code()); }

std::uint64_t abs_imbalance(std::uint64_t positive, std::uint64_t size) {
  const std::uint64_t negative = size - positive;
  return positive > negative ? positive - negative : negative - positive;
}

void require_dim(const VersionSpace& vs, const SpinVector& v) {
  if (v.size() != vs.dim()) {
    throw UsageError("vector length " + std::to_string(v.size()) +
                     " does not match version space dimension " + std::to_string(vs.dim()));
  }
}

}  // namespace

VersionSpace VersionSpace::enumerate_initial(std::size_t n, std::size_t limit) {
  if (n == 0 || n % 2 == 0) {
    throw UsageError("version space dimension must be positive and odd, got " + std::to_string(n));
  }
  if (n > limit || n > kEnumerationLimit) {
    throw CapacityError("N = " + std::to_string(n) + " exceeds the enumeration limit " +
                        std::to_string(std::min(limit, kEnumerationLimit)));
  }
  std::vector<Code> members(std::size_t{1} << n);
  std::iota(members.begin(), members.end(), Code{0});
  return VersionSpace(n, std::move(members), 0);
}

bool VersionSpace::contains(const SpinVector& j) const {
  require_dim(*this, j);
  return std::binary_search(members_.begin(), members_.end(), code_of(j));
}

double VersionSpace::entropy_density() const {
  return std::log2(static_cast<double>(members_.size())) / static_cast<double>(n_);
}

VersionSpace VersionSpace::filter(const SpinVector& xi, int label) const {
  require_dim(*this, xi);
  auto kept = k::filter(members_, code_of(xi), label, static_cast<unsigned>(n_));
  if (kept.empty()) {
    throw ConsistencyError("version space became empty; label is not the teacher's");
  }
  return VersionSpace(n_, std::move(kept), samples_ + 1);
}

std::vector<double> mean_weights(const VersionSpace& vs) {
  const auto counts = k::plus_counts(vs.members(), static_cast<unsigned>(vs.dim()));
  const auto size = static_cast<double>(vs.size());
  std::vector<double> m(vs.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = (2.0 * static_cast<double>(counts[i]) - size) / size;
  }
  return m;
}

std::vector<double> disagreement_by_distance(std::size_t n) {
  if (n > 62) throw UsageError("disagreement_by_distance supports N <= 62");
  // binom[r][k] for r <= n
  std::vector<std::vector<std::uint64_t>> binom(n + 1);
  for (std::size_t r = 0; r <= n; ++r) {
    binom[r].assign(r + 1, 1);
    for (std::size_t c = 1; c < r; ++c) binom[r][c] = binom[r - 1][c - 1] + binom[r - 1][c];
  }
  // Teacher and J agree on n - d entries (partial overlap a) and disagree on d
  // (partial overlap b). Labels differ iff |b| > |a|.
  std::vector<double> eps(n + 1, 0.0);
  const double total = std::ldexp(1.0, static_cast<int>(n));
  for (std::size_t d = 0; d <= n; ++d) {
    const std::size_t same = n - d;
    std::uint64_t count = 0;
    for (std::size_t ka = 0; ka <= same; ++ka) {
      const long a = static_cast<long>(same) - 2 * static_cast<long>(ka);
      for (std::size_t kb = 0; kb <= d; ++kb) {
        const long b = static_cast<long>(d) - 2 * static_cast<long>(kb);
        if (std::labs(b) > std::labs(a)) count += binom[same][ka] * binom[d][kb];
      }
    }
    eps[d] = static_cast<double>(count) / total;
  }
  return eps;
}

double exact_generalization_error(const VersionSpace& vs, const SpinVector& truth) {
  require_dim(vs, truth);
  const auto n = static_cast<unsigned>(vs.dim());
  const auto hist = k::distance_histogram(vs.members(), code_of(truth), n);
  const auto eps = disagreement_by_distance(n);
  double sum = 0.0;
  for (unsigned d = 0; d <= n; ++d) sum += static_cast<double>(hist[d]) * eps[d];
  return sum / static_cast<double>(vs.size());
}

double sampled_generalization_error(const VersionSpace& vs, const SpinVector& truth,
                                    std::size_t samples, Rng& rng) {
  require_dim(vs, truth);
  if (samples == 0) throw UsageError("need at least one test sample");
  const auto n = static_cast<unsigned>(vs.dim());
  const Code mask = static_cast<Code>((std::uint64_t{1} << n) - 1);
  const Code t = code_of(truth);
  const auto members = vs.members();
  std::uint64_t bad = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Code xi = static_cast<Code>(rng.bits()) & mask;
    const Code j = members[rng.below(members.size())];
    bad += (kernels::agrees(j, xi, n) != kernels::agrees(t, xi, n)) ? 1 : 0;
  }
  return static_cast<double>(bad) / static_cast<double>(samples);
}

VSStats stats(const VersionSpace& vs, const SpinVector& truth, const StatsOptions& options,
              Rng& rng) {
  VSStats out;
  out.entropy_density = vs.entropy_density();
  out.mean_weights = mean_weights(vs);
  if (options.pair_correlations) {
    const auto n = static_cast<unsigned>(vs.dim());
    const auto agree = k::pair_agree_counts(vs.members(), n);
    const auto size = static_cast<double>(vs.size());
    std::vector<double> corr(agree.size());
    for (std::size_t e = 0; e < agree.size(); ++e) {
      corr[e] = (2.0 * static_cast<double>(agree[e]) - size) / size;
    }
    out.pair_correlations = std::move(corr);
  }
  out.generalization_error = vs.dim() <= options.exact_gen_limit
                                 ? exact_generalization_error(vs, truth)
                                 : sampled_generalization_error(vs, truth, options.gen_samples, rng);
  return out;
}

std::uint64_t imbalance(const VersionSpace& vs, const SpinVector& xi) {
  require_dim(vs, xi);
  const auto pos = k::count_positive(vs.members(), code_of(xi), static_cast<unsigned>(vs.dim()));
  return abs_imbalance(pos, vs.size());
}

BisectResult bisect_design(const VersionSpace& vs, Rng& rng, const BisectOptions& options) {
  const auto n = static_cast<unsigned>(vs.dim());
  const auto members = vs.members();
  const std::uint64_t floor = vs.size() % 2;
  auto score = [&](Code xi) {
    return abs_imbalance(k::count_positive(members, xi, n), vs.size());
  };

  Code best = 0;
  std::uint64_t best_score = ~std::uint64_t{0};
  auto consider = [&](Code xi, std::uint64_t s) {
    if (s < best_score) {
      best = xi;
      best_score = s;
    }
    return best_score == floor;
  };
  auto result = [&] { return BisectResult{SpinVector::from_code(best, n), best_score}; };

  if (n <= options.exhaustive_limit) {
    // xi and -xi have the same imbalance; scan representatives with entry N-1 = -1.
    const Code half = Code{1} << (n - 1);
    for (Code xi = 0; xi < half; ++xi) {
      if (consider(xi, score(xi))) break;
    }
    return result();
  }

  const Code mask = static_cast<Code>((std::uint64_t{1} << n) - 1);
  std::vector<std::pair<std::uint64_t, Code>> pool;
  pool.reserve(options.pool);
  for (std::size_t c = 0; c < options.pool; ++c) {
    const Code xi = static_cast<Code>(rng.bits()) & mask;
    const auto s = score(xi);
    if (consider(xi, s)) return result();
    pool.emplace_back(s, xi);
  }
  // Descent from the best few pool entries; stable sort keeps first-found order on ties.
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t starts = std::min(options.restarts, pool.size());
  for (std::size_t r = 0; r < starts; ++r) {
    auto [current_score, current] = pool[r];
    bool improved = true;
    while (improved) {
      improved = false;
      for (unsigned i = 0; i < n; ++i) {
        const Code trial = current ^ (Code{1} << i);
        const auto s = score(trial);
        if (s < current_score) {
          current = trial;
          current_score = s;
          improved = true;
          if (consider(current, current_score)) return result();
        }
      }
    }
  }
  return result();
}

ExactConditionals exact_conditionals(const VersionSpace& vs, const SpinVector& xi, int label,
                                     std::size_t i) {
  if (i >= vs.dim()) throw UsageError("coordinate " + std::to_string(i) + " out of range");
  return exact_conditionals_all(vs, xi, label)[i];
}

std::vector<ExactConditionals> exact_conditionals_all(const VersionSpace& vs,
                                                      const SpinVector& xi, int label) {
  require_dim(vs, xi);
  const auto n = static_cast<unsigned>(vs.dim());
  const auto c = k::conditional_counts(vs.members(), code_of(xi), label, n);
  std::vector<ExactConditionals> out(n);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t minus_total = c.size - c.plus_total[i];
    const std::uint64_t minus_correct = c.correct - c.plus_correct[i];
    if (c.plus_total[i] > 0) {
      out[i].plus = static_cast<double>(c.plus_correct[i]) / static_cast<double>(c.plus_total[i]);
    }
    if (minus_total > 0) {
      out[i].minus = static_cast<double>(minus_correct) / static_cast<double>(minus_total);
    }
  }
  return out;
}

std::map<int, double> overlap_histogram(const VersionSpace& vs, const SpinVector& xi) {
  require_dim(vs, xi);
  const auto n = static_cast<unsigned>(vs.dim());
  const auto hist = k::distance_histogram(vs.members(), code_of(xi), n);
  std::map<int, double> out;
  for (unsigned d = 0; d <= n; ++d) {
    if (hist[d] == 0) continue;
    out[static_cast<int>(n) - 2 * static_cast<int>(d)] =
        static_cast<double>(hist[d]) / static_cast<double>(vs.size());
  }
  return out;
}

double overlap_variance_from_moments(const SpinVector& xi, std::span<const double> mean,
                                     std::span<const double> pair) {
  const std::size_t n = xi.size();
  if (mean.size() != n || pair.size() != n * n) throw UsageError("moment sizes do not match N");
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) var += 1.0 - mean[i] * mean[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      var += 2.0 * xi[i] * xi[j] * (pair[i * n + j] - mean[i] * mean[j]);
    }
  }
  return var;
}

}  // namespace apal
