#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "apal/kernels.hpp"
#include "apal/rng.hpp"
#include "apal/spin.hpp"

namespace apal {

// Largest N for which the full weight space is enumerated (2^25 members, 128 MiB).
inline constexpr std::size_t kEnumerationLimit = 25;

/// Every Ising weight vector consistent with the labelled samples seen so far.
///
/// Members are packed codes kept in ascending order. The set only shrinks, and
/// it always contains the teacher when filtered with true labels.
class VersionSpace {
 public:
  // The full space {-1,+1}^N. Throws CapacityError above `limit`.
  static VersionSpace enumerate_initial(std::size_t n, std::size_t limit = kEnumerationLimit);

  std::size_t dim() const { return n_; }
  std::size_t size() const { return members_.size(); }
  std::size_t samples_seen() const { return samples_; }
  std::span<const kernels::Code> members() const { return members_; }

  bool contains(const SpinVector& j) const;

  // log2|members| / N, in bits per weight.
  double entropy_density() const;

  // Keeps the J with sign(J . xi) == label. Throws ConsistencyError if the
  // result would be empty (impossible when label comes from a member).
  VersionSpace filter(const SpinVector& xi, int label) const;

 private:
  VersionSpace(std::size_t n, std::vector<kernels::Code> members, std::size_t samples)
      : n_(n), members_(std::move(members)), samples_(samples) {}

  std::size_t n_ = 0;
  std::vector<kernels::Code> members_;
  std::size_t samples_ = 0;
};

struct StatsOptions {
  // Exact generalization error when N <= exact_gen_limit, otherwise a
  // Monte Carlo estimate from gen_samples (pattern, member) pairs.
  std::size_t exact_gen_limit = kEnumerationLimit;
  std::size_t gen_samples = 10000;
  bool pair_correlations = false;
};

struct VSStats {
  double entropy_density = 0.0;
  std::vector<double> mean_weights;
  std::optional<std::vector<double>> pair_correlations;  // row-major N x N
  double generalization_error = 0.0;
};

VSStats stats(const VersionSpace& vs, const SpinVector& truth, const StatsOptions& options,
              Rng& rng);

std::vector<double> mean_weights(const VersionSpace& vs);

// Probability that a uniformly random pattern is labelled differently by a
// weight vector at Hamming distance d from the teacher; index d = 0..N.
std::vector<double> disagreement_by_distance(std::size_t n);

// Average of disagreement_by_distance over members: the generalization error
// over all 2^N test patterns, computed in O(|members|).
double exact_generalization_error(const VersionSpace& vs, const SpinVector& truth);

double sampled_generalization_error(const VersionSpace& vs, const SpinVector& truth,
                                    std::size_t samples, Rng& rng);

struct BisectOptions {
  // Exhaustive search over all patterns up to this N, stochastic above it.
  std::size_t exhaustive_limit = 13;
  std::size_t pool = 2000;
  std::size_t restarts = 4;
};

struct BisectResult {
  SpinVector pattern;
  std::uint64_t imbalance = 0;  // |sum_J sign(xi . J)|
};

// |sum over members of sign(xi . J)|.
std::uint64_t imbalance(const VersionSpace& vs, const SpinVector& xi);

// Pattern splitting the members as evenly as the search finds. The imbalance
// has the parity of |members|, so the search stops at 0 (even) or 1 (odd).
BisectResult bisect_design(const VersionSpace& vs, Rng& rng, const BisectOptions& options = {});

struct ExactConditionals {
  std::optional<double> plus;   // P(correct | J_i = +1); absent if no member has J_i = +1
  std::optional<double> minus;  // P(correct | J_i = -1)
};

ExactConditionals exact_conditionals(const VersionSpace& vs, const SpinVector& xi, int label,
                                     std::size_t i);

// All coordinates at once; entry i matches exact_conditionals(vs, xi, label, i).
std::vector<ExactConditionals> exact_conditionals_all(const VersionSpace& vs,
                                                      const SpinVector& xi, int label);

// Distribution of the overlap q = xi . J over members (support: odd q in [-N, N]).
std::map<int, double> overlap_histogram(const VersionSpace& vs, const SpinVector& xi);

// Overlap variance from first and second moments of the weights:
// sum_i (1 - m_i^2) + sum_{i<j} 2 xi_i xi_j (C_ij - m_i m_j).
double overlap_variance_from_moments(const SpinVector& xi, std::span<const double> mean,
                                     std::span<const double> pair);

}  // namespace apal
