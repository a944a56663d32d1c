#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "apal/rng.hpp"
#include "apal/spin.hpp"

namespace apal {

struct AnnealSchedule {
  double beta0 = 0.01;
  double r_beta = 1.1;
  std::size_t levels = 100;
  std::size_t flips_per_level = 0;  // 0 means N
};

// Throws UsageError unless beta0 > 0, r_beta > 1, levels >= 1.
void validate(const AnnealSchedule& schedule);

/// Inputs to the pattern energies: current mean weights and a ring of the most
/// recent training patterns (newest first), with their Gram matrix
/// sum_mu xi^mu (xi^mu)^T kept up to date for O(N) flip updates.
class DesignContext {
 public:
  // memory defaults to N - 1.
  explicit DesignContext(std::size_t n, double lambda = 1.0,
                         std::optional<std::size_t> memory = std::nullopt);

  std::size_t size() const { return n_; }
  double lambda() const { return lambda_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t stored() const { return memory_.size(); }

  void set_means(std::span<const double> means);
  std::span<const double> means() const { return means_; }

  // Pushes a pattern as newest, dropping the oldest beyond capacity.
  void remember(const SpinVector& xi);
  const std::deque<SpinVector>& memory() const { return memory_; }
  // Row-major N x N.
  std::span<const std::int32_t> gram() const { return gram_; }

 private:
  void accumulate(const SpinVector& xi, int sign);

  std::size_t n_;
  double lambda_;
  std::size_t capacity_;
  std::vector<double> means_;
  std::deque<SpinVector> memory_;
  std::vector<std::int32_t> gram_;
};

// Each entry independently +-1 with probability 1/2.
SpinVector random_pattern(std::size_t n, Rng& rng);

// |sum_i m_i xi_i|
double energy_basic(const SpinVector& xi, const DesignContext& ctx);

// energy_basic + lambda * mean over stored patterns of (xi . xi^mu)^2.
double energy_orthogonal(const SpinVector& xi, const DesignContext& ctx);

// Metropolis rule: always accept delta_e <= 0, otherwise with probability exp(-beta delta_e).
inline bool metropolis_accept(double delta_e, double beta, Rng& rng) {
  if (delta_e <= 0.0) return true;
  return rng.uniform() < std::exp(-beta * delta_e);
}

/// Incremental energy over a spin configuration: O(1) flip proposals.
template <class E>
concept FlipEnergy = requires(E e, const E ce, std::span<const std::int8_t> spins, std::size_t i) {
  e.reset(spins);
  { ce.value() } -> std::convertible_to<double>;
  { ce.delta(i) } -> std::convertible_to<double>;
  e.flip(i);
  { ce.spins() } -> std::convertible_to<std::span<const std::int8_t>>;
};

class BasicEnergy {
 public:
  explicit BasicEnergy(const DesignContext& ctx) : means_(ctx.means()) {}

  void reset(std::span<const std::int8_t> spins);
  double value() const { return std::abs(field_); }
  double delta(std::size_t i) const {
    return std::abs(field_ - 2.0 * means_[i] * spins_[i]) - std::abs(field_);
  }
  void flip(std::size_t i) {
    field_ -= 2.0 * means_[i] * spins_[i];
    spins_[i] = static_cast<std::int8_t>(-spins_[i]);
  }
  std::span<const std::int8_t> spins() const { return spins_; }

 private:
  std::span<const double> means_;
  std::vector<std::int8_t> spins_;
  double field_ = 0.0;
};

// Flipping entry i changes each stored overlap c_mu by -2 xi^mu_i xi_i, so
// sum_mu c_mu^2 changes by 4K - 4 xi_i g_i with g = Gram * xi and K stored patterns.
class OrthogonalEnergy {
 public:
  explicit OrthogonalEnergy(const DesignContext& ctx);

  void reset(std::span<const std::int8_t> spins);
  double value() const;
  double delta(std::size_t i) const {
    const double d_field = std::abs(field_ - 2.0 * means_[i] * spins_[i]) - std::abs(field_);
    if (stored_ == 0) return d_field;
    const std::int64_t d_sq = 4 * static_cast<std::int64_t>(stored_) -
                              4 * static_cast<std::int64_t>(spins_[i]) * gram_xi_[i];
    return d_field + weight_ * static_cast<double>(d_sq);
  }
  void flip(std::size_t i);
  std::span<const std::int8_t> spins() const { return spins_; }

 private:
  std::size_t n_;
  std::span<const double> means_;
  std::span<const std::int32_t> gram_;
  std::size_t stored_;
  double weight_;  // lambda / stored
  std::vector<std::int8_t> spins_;
  std::vector<std::int32_t> gram_xi_;
  std::int64_t sum_sq_ = 0;
  double field_ = 0.0;
};

struct AnnealResult {
  SpinVector pattern;
  double final_energy = 0.0;
  std::size_t proposals = 0;
  std::size_t accepted = 0;
};

/// Simulated annealing from a uniform random pattern: `levels` rounds of
/// single-spin Metropolis proposals at a randomly chosen entry, with beta
/// multiplied by r_beta after each round. Returns the final configuration.
template <FlipEnergy E>
AnnealResult anneal(E& energy, std::size_t n, const AnnealSchedule& schedule, Rng& rng) {
  const SpinVector start = random_pattern(n, rng);
  std::vector<std::int8_t> spins(n);
  for (std::size_t i = 0; i < n; ++i) spins[i] = static_cast<std::int8_t>(start[i]);
  energy.reset(spins);

  const std::size_t flips = schedule.flips_per_level == 0 ? n : schedule.flips_per_level;
  AnnealResult out;
  double beta = schedule.beta0;
  for (std::size_t level = 0; level < schedule.levels; ++level) {
    for (std::size_t f = 0; f < flips; ++f) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      if (metropolis_accept(energy.delta(i), beta, rng)) {
        energy.flip(i);
        ++out.accepted;
      }
    }
    out.proposals += flips;
    beta *= schedule.r_beta;
  }

  const auto live = energy.spins();
  const std::vector<std::int8_t> final_spins(live.begin(), live.end());
  const std::vector<int> as_int(final_spins.begin(), final_spins.end());
  out.pattern = SpinVector::from_spins(as_int);
  // Recompute from scratch so incremental rounding never leaks into the report.
  energy.reset(final_spins);
  out.final_energy = energy.value();
  return out;
}

}  // namespace apal
