#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apal/spin.hpp"

namespace apal {

struct UpdateParams {
  double w0 = 8e-3;            // step weight used to escape a wrongly saturated mean
  double delta_floor = 1e-12;  // lower bound on the overlap variance
};

/// Online summary of the posterior: mean weights m_i in [-1, 1], all zero before
/// the first sample.
class BeliefState {
 public:
  explicit BeliefState(std::size_t n) : mean_(n, 0.0) {}
  // Throws UsageError if any entry lies outside [-1, 1].
  static BeliefState from_means(std::vector<double> means, std::size_t samples_seen = 0);

  std::size_t size() const { return mean_.size(); }
  std::size_t samples_seen() const { return samples_; }
  std::span<const double> means() const { return mean_; }
  double operator[](std::size_t i) const { return mean_[i]; }

  // Incorporate one labelled pattern (see update()).
  void absorb(const SpinVector& xi, int label, const UpdateParams& params);

 private:
  std::vector<double> mean_;
  std::size_t samples_ = 0;
};

// exp(-x^2) / (1 + erf(x)), evaluated without cancellation for x << 0.
double f_of_x(double x);

// Sum_i (1 - m_i^2), floored at params.delta_floor.
double variance_approx(const BeliefState& state, const UpdateParams& params = {});

// Sum_i xi_i m_i.
double mean_field(const BeliefState& state, const SpinVector& xi);

// 2 / sqrt(2 pi D) * f(sigma h / sqrt(2 D)) with h = mean_field, D = variance_approx.
double magnitude_factor(const BeliefState& state, const SpinVector& xi, int label,
                        const UpdateParams& params = {});

// m_i <- clamp(m_i + sigma xi_i W(m_i) R, -1, 1), where W(m) = 1 - m^2, replaced
// by w0 when sigma xi_i opposes sign(m) and 1 - m^2 < w0.
BeliefState update(const BeliefState& state, const SpinVector& xi, int label,
                   const UpdateParams& params = {});

// sign(m_i), with sign(0) := +1.
SpinVector infer(const BeliefState& state);

// Posterior mean of one weight from its prior mean and the two conditional
// probabilities of classifying the new sample correctly:
// (p+ A+ - p- A-) / (p+ A+ + p- A-), p+- = (1 +- m) / 2.
double bayes_marginal(double m, double a_plus, double a_minus);

struct GaussianConditionals {
  double plus = 0.0;        // Gaussian tail with mean shifted by +sigma xi_i
  double minus = 0.0;       // ... by -sigma xi_i
  double base = 0.0;        // A: tail at the full mean field
  double slope = 0.0;       // dA: Gaussian density factor at the full mean field
  double lin_plus = 0.0;    // A + sigma xi_i (1 - m_i) dA, clamped to [0, 1]
  double lin_minus = 0.0;   // A - sigma xi_i (1 + m_i) dA, clamped to [0, 1]
};

GaussianConditionals gaussian_conditionals(const BeliefState& state, const SpinVector& xi,
                                           int label, std::size_t i,
                                           const UpdateParams& params = {});

}  // namespace apal
