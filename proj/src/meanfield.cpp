#include "apal/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apal/errors.hpp"

namespace apal {

namespace {

// Below this x, erfc(-x) approaches the subnormal range; switch to the
// asymptotic series of the scaled complementary error function.
constexpr double kAsymptoticCutoff = -20.0;

// exp(y^2) erfc(y) for y >= 20 via its asymptotic series.
double erfcx_asymptotic(double y) {
  const double inv = 1.0 / (2.0 * y * y);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return sum / (y * std::sqrt(std::numbers::pi));
}

void require_length(const BeliefState& state, const SpinVector& xi) {
  if (xi.size() != state.size()) {
    throw UsageError("pattern length " + std::to_string(xi.size()) + " does not match belief " +
                     std::to_string(state.size()));
  }
}

}  // namespace

BeliefState BeliefState::from_means(std::vector<double> means, std::size_t samples_seen) {
  for (double m : means) {
    if (!(m >= -1.0 && m <= 1.0)) throw UsageError("mean weight outside [-1, 1]");
  }
  BeliefState s(0);
  s.mean_ = std::move(means);
  s.samples_ = samples_seen;
  return s;
}

double f_of_x(double x) {
  if (x >= 0.0) return std::exp(-x * x) / (1.0 + std::erf(x));
  if (x > kAsymptoticCutoff) return std::exp(-x * x) / std::erfc(-x);
  return 1.0 / erfcx_asymptotic(-x);
}

double variance_approx(const BeliefState& state, const UpdateParams& params) {
  double delta = 0.0;
  for (double m : state.means()) delta += 1.0 - m * m;
  return std::max(delta, params.delta_floor);
}

double mean_field(const BeliefState& state, const SpinVector& xi) {
  require_length(state, xi);
  double h = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) h += xi[i] * state[i];
  return h;
}

double magnitude_factor(const BeliefState& state, const SpinVector& xi, int label,
                        const UpdateParams& params) {
  const double delta = variance_approx(state, params);
  const double h = mean_field(state, xi);
  return 2.0 / std::sqrt(2.0 * std::numbers::pi * delta) *
         f_of_x(label * h / std::sqrt(2.0 * delta));
}

void BeliefState::absorb(const SpinVector& xi, int label, const UpdateParams& params) {
  const double r = magnitude_factor(*this, xi, label, params);
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double m = mean_[i];
    const int push = label * xi[i];
    double w = 1.0 - m * m;
    if (w < params.w0 && m != 0.0 && (push > 0) != (m > 0.0)) w = params.w0;
    mean_[i] = std::clamp(m + push * w * r, -1.0, 1.0);
  }
  ++samples_;
}

BeliefState update(const BeliefState& state, const SpinVector& xi, int label,
                   const UpdateParams& params) {
  BeliefState next = state;
  next.absorb(xi, label, params);
  return next;
}

SpinVector infer(const BeliefState& state) {
  SpinVector out = SpinVector::all_plus(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] < 0.0) out.set(i, -1);
  }
  return out;
}

double bayes_marginal(double m, double a_plus, double a_minus) {
  const double p_plus = 0.5 * (1.0 + m);
  const double p_minus = 0.5 * (1.0 - m);
  const double up = p_plus * a_plus;
  const double down = p_minus * a_minus;
  return (up - down) / (up + down);
}

GaussianConditionals gaussian_conditionals(const BeliefState& state, const SpinVector& xi,
                                           int label, std::size_t i,
                                           const UpdateParams& params) {
  if (i >= state.size()) throw UsageError("coordinate " + std::to_string(i) + " out of range");
  const double delta = variance_approx(state, params);
  const double h = mean_field(state, xi);
  const double rest = h - xi[i] * state[i];  // sum over j != i
  const double scale = std::sqrt(2.0 * delta);
  // P(x > 0) for x ~ N(mu, delta)
  auto tail = [&](double mu) { return 0.5 * std::erfc(-mu / scale); };

  GaussianConditionals g;
  g.plus = tail(label * (xi[i] + rest));
  g.minus = tail(label * (-xi[i] + rest));
  g.base = tail(label * h);
  g.slope = std::exp(-h * h / (2.0 * delta)) / std::sqrt(2.0 * std::numbers::pi * delta);
  const double push = label * xi[i];
  g.lin_plus = std::clamp(g.base + push * (1.0 - state[i]) * g.slope, 0.0, 1.0);
  g.lin_minus = std::clamp(g.base - push * (1.0 + state[i]) * g.slope, 0.0, 1.0);
  return g;
}

}  // namespace apal
