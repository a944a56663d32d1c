#include "apal/designer.hpp"

#include <string>

#include "apal/errors.hpp"

namespace apal {

void validate(const AnnealSchedule& schedule) {
  if (!(schedule.beta0 > 0.0)) throw UsageError("beta0 must be positive");
  if (!(schedule.r_beta > 1.0)) throw UsageError("r_beta must exceed 1");
  if (schedule.levels < 1) throw UsageError("anneal needs at least one level");
}

DesignContext::DesignContext(std::size_t n, double lambda, std::optional<std::size_t> memory)
    : n_(n),
      lambda_(lambda),
      capacity_(memory.value_or(n > 0 ? n - 1 : 0)),
      means_(n, 0.0),
      gram_(capacity_ > 0 ? n * n : 0, 0) {
  if (n == 0) throw UsageError("design context needs N > 0");
  if (!(lambda >= 0.0)) throw UsageError("lambda must be non-negative");
}

void DesignContext::set_means(std::span<const double> means) {
  if (means.size() != n_) throw UsageError("mean weight count does not match N");
  means_.assign(means.begin(), means.end());
}

void DesignContext::accumulate(const SpinVector& xi, int sign) {
  std::vector<std::int32_t> s(n_);
  for (std::size_t i = 0; i < n_; ++i) s[i] = xi[i] * sign;
  for (std::size_t a = 0; a < n_; ++a) {
    const std::int32_t sa = xi[a];
    std::int32_t* row = gram_.data() + a * n_;
    for (std::size_t b = 0; b < n_; ++b) row[b] += sa * s[b];
  }
}

void DesignContext::remember(const SpinVector& xi) {
  if (xi.size() != n_) throw UsageError("pattern length does not match N");
  if (capacity_ == 0) return;
  memory_.push_front(xi);
  accumulate(xi, +1);
  if (memory_.size() > capacity_) {
    accumulate(memory_.back(), -1);
    memory_.pop_back();
  }
}

SpinVector random_pattern(std::size_t n, Rng& rng) {
  SpinVector v = SpinVector::all_plus(n);
  for (auto& w : v.mutable_words()) w = rng.bits();
  v.normalize();
  return v;
}

double energy_basic(const SpinVector& xi, const DesignContext& ctx) {
  if (xi.size() != ctx.size()) throw UsageError("pattern length does not match N");
  double field = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) field += ctx.means()[i] * xi[i];
  return std::abs(field);
}

double energy_orthogonal(const SpinVector& xi, const DesignContext& ctx) {
  const double base = energy_basic(xi, ctx);
  if (ctx.stored() == 0) return base;
  double sum_sq = 0.0;
  for (const auto& past : ctx.memory()) {
    const auto c = static_cast<double>(overlap(xi, past));
    sum_sq += c * c;
  }
  return base + ctx.lambda() * sum_sq / static_cast<double>(ctx.stored());
}

void BasicEnergy::reset(std::span<const std::int8_t> spins) {
  spins_.assign(spins.begin(), spins.end());
  field_ = 0.0;
  for (std::size_t i = 0; i < spins_.size(); ++i) field_ += means_[i] * spins_[i];
}

OrthogonalEnergy::OrthogonalEnergy(const DesignContext& ctx)
    : n_(ctx.size()),
      means_(ctx.means()),
      gram_(ctx.gram()),
      stored_(ctx.stored()),
      weight_(ctx.stored() > 0 ? ctx.lambda() / static_cast<double>(ctx.stored()) : 0.0),
      gram_xi_(ctx.size(), 0) {}

void OrthogonalEnergy::reset(std::span<const std::int8_t> spins) {
  spins_.assign(spins.begin(), spins.end());
  field_ = 0.0;
  for (std::size_t i = 0; i < n_; ++i) field_ += means_[i] * spins_[i];
  sum_sq_ = 0;
  if (stored_ == 0) return;
  for (std::size_t a = 0; a < n_; ++a) {
    const std::int32_t* row = gram_.data() + a * n_;
    std::int32_t g = 0;
    for (std::size_t b = 0; b < n_; ++b) g += row[b] * spins_[b];
    gram_xi_[a] = g;
    sum_sq_ += static_cast<std::int64_t>(spins_[a]) * g;
  }
}

double OrthogonalEnergy::value() const {
  return std::abs(field_) + weight_ * static_cast<double>(sum_sq_);
}

void OrthogonalEnergy::flip(std::size_t i) {
  const std::int8_t s = spins_[i];
  field_ -= 2.0 * means_[i] * s;
  if (stored_ > 0) {
    sum_sq_ += 4 * static_cast<std::int64_t>(stored_) - 4 * static_cast<std::int64_t>(s) * gram_xi_[i];
    // Gram is symmetric, so column i equals row i.
    const std::int32_t* row = gram_.data() + i * n_;
    const std::int32_t two_s = 2 * s;
    std::int32_t* g = gram_xi_.data();
    for (std::size_t j = 0; j < n_; ++j) g[j] -= two_s * row[j];
  }
  spins_[i] = static_cast<std::int8_t>(-s);
}

}  // namespace apal
