#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "apal/designer.hpp"
#include "apal/errors.hpp"
#include "apal/meanfield.hpp"
#include "oracles.hpp"

using apal::BeliefState;
using apal::SpinVector;

namespace {

SpinVector v(std::vector<int> s) { return SpinVector::from_spins(s); }

TEST(FOfX, ReferenceValues) {
  EXPECT_EQ(apal::f_of_x(0.0), 1.0);
  // 20-digit references.
  const std::pair<double, double> ref[] = {
      {1.0, 0.19964144074771737374},  {-1.0, 2.3387240665100064766},
      {0.5, 0.51220049040159312879},  {-3.0, 5.5865562506168177583},
      {-8.0, 14.288742233312695396},  {8.0, 8.0190544527431892649e-29},
  };
  for (auto [x, fx] : ref) EXPECT_NEAR(apal::f_of_x(x) / fx, 1.0, 1e-13) << x;
}

TEST(FOfX, MatchesQuadratureOnGrid) {
  double prev = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    const double x = -8.0 + 16.0 * k / 999.0;
    const double got = apal::f_of_x(x);
    const auto want = apal::oracle::f_by_quadrature(x);
    ASSERT_LT(std::fabs(static_cast<long double>(got) / want - 1), 1e-10L) << x;
    ASSERT_GT(got, 0.0);
    ASSERT_LT(got, prev);
    prev = got;
  }
}

TEST(FOfX, FarTailsStayFiniteAndPositive) {
  for (double x : {-40.0, -25.0, -20.0, -19.99, 20.0, 26.0}) {
    const double fx = apal::f_of_x(x);
    EXPECT_TRUE(std::isfinite(fx));
    EXPECT_GE(fx, 0.0);
  }
  // f(x) ~ sqrt(pi) |x| for x -> -inf.
  EXPECT_NEAR(apal::f_of_x(-1e4) / (1e4 * std::sqrt(std::numbers::pi)), 1.0, 1e-8);
  // Continuity across the asymptotic switch.
  EXPECT_NEAR(apal::f_of_x(-20.0 + 1e-9) / apal::f_of_x(-20.0 - 1e-9), 1.0, 1e-9);
}

TEST(Variance, Examples) {
  EXPECT_EQ(apal::variance_approx(BeliefState(9)), 9.0);
  EXPECT_EQ(apal::variance_approx(BeliefState::from_means({1.0, -1.0, 1.0})), 1e-12);
  EXPECT_DOUBLE_EQ(apal::variance_approx(BeliefState::from_means({0.5, 0.5, 0.0})), 2.5);
  EXPECT_THROW(BeliefState::from_means({1.5, 0.0, 0.0}), apal::UsageError);
}

TEST(MagnitudeFactor, Examples) {
  const double r0 = apal::magnitude_factor(BeliefState(9), SpinVector::all_plus(9), -1);
  EXPECT_NEAR(r0, 0.26596, 5e-6);
  EXPECT_DOUBLE_EQ(r0, 2.0 / std::sqrt(18.0 * std::numbers::pi));

  // Zero mean field gives the bare prefactor.
  const auto state = BeliefState::from_means({0.5, 0.5, 0.0});
  EXPECT_DOUBLE_EQ(apal::magnitude_factor(state, v({1, -1, 1}), 1),
                   2.0 / std::sqrt(2.0 * std::numbers::pi * 2.5));

  // A confirming label on a strongly aligned pattern carries little information.
  const auto sure = BeliefState::from_means(std::vector<double>(99, 0.9));
  EXPECT_LT(apal::magnitude_factor(sure, SpinVector::all_plus(99), 1), 1e-6);
  EXPECT_GT(apal::magnitude_factor(sure, SpinVector::all_plus(99), -1), 1.0);
}

TEST(Update, FirstPatternFromZero) {
  const SpinVector xi = v({1, -1, 1, 1, -1, -1, 1, 1, 1});
  const auto next = apal::update(BeliefState(9), xi, -1);
  const double r0 = 2.0 / std::sqrt(18.0 * std::numbers::pi);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_DOUBLE_EQ(next[i], -xi[i] * r0);
  EXPECT_EQ(next.samples_seen(), 1u);
}

TEST(Update, EscapeWeightOnWrongSaturation) {
  // m_0 = 0.999 pushed down: 1 - m^2 = 0.001999 < w0, so the step uses w0.
  const auto state = BeliefState::from_means({0.999, 0.0, 0.0});
  const SpinVector xi = v({-1, 1, 1});
  const double r = apal::magnitude_factor(state, xi, 1);
  const auto next = apal::update(state, xi, 1);
  EXPECT_DOUBLE_EQ(next[0], 0.999 - 8e-3 * r);
  // Without the escape the step would be four times smaller.
  apal::UpdateParams off;
  off.w0 = 0.0;
  EXPECT_DOUBLE_EQ(apal::update(state, xi, 1, off)[0], 0.999 - (1 - 0.999 * 0.999) * r);
}

TEST(Update, SaturatedAgreeingMeanIsFixedPoint) {
  const auto state = BeliefState::from_means({1.0, -1.0, 0.2});
  const auto next = apal::update(state, v({1, -1, 1}), 1);
  EXPECT_EQ(next[0], 1.0);
  EXPECT_EQ(next[1], -1.0);
  EXPECT_GT(next[2], 0.2);
}

TEST(Infer, SignsWithPlusTieBreak) {
  EXPECT_EQ(apal::infer(BeliefState::from_means({0.3, -0.7, 0.01})), v({1, -1, 1}));
  EXPECT_EQ(apal::infer(BeliefState(5)), SpinVector::all_plus(5));
}

TEST(UpdateProperties, HebbianBoundedAndEquivariant) {
  apal::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 * rng.below(20) + 1;
    std::vector<double> m(n);
    for (auto& x : m) x = 2 * rng.uniform() - 1;
    const auto state = BeliefState::from_means(m);
    const SpinVector xi = apal::random_pattern(n, rng);
    const int label = rng.below(2) ? 1 : -1;
    const auto next = apal::update(state, xi, label);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_GE(next[i], -1.0);
      ASSERT_LE(next[i], 1.0);
      const double step = next[i] - state[i];
      ASSERT_GE(step * label * xi[i], 0.0);
    }
    // Same sample again keeps moving each coordinate the same way.
    const auto twice = apal::update(next, xi, label);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_GE((twice[i] - next[i]) * label * xi[i], 0.0);
    }
    // Reversal permutation; the mean field is summed in another order.
    std::vector<double> rm(m.rbegin(), m.rend());
    auto xs = xi.to_spins();
    std::vector<int> rxs(xs.rbegin(), xs.rend());
    const auto rnext =
        apal::update(BeliefState::from_means(rm), SpinVector::from_spins(rxs), label);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(rnext[n - 1 - i], next[i], 1e-12);
  }
}

TEST(GaussianConditionals, ZeroFieldSlope) {
  const BeliefState state(1001);
  const auto g = apal::gaussian_conditionals(state, SpinVector::all_plus(1001), 1, 0);
  EXPECT_DOUBLE_EQ(g.base, 0.5);
  EXPECT_DOUBLE_EQ(g.slope, 1.0 / std::sqrt(2.0 * std::numbers::pi * 1001));
  EXPECT_NEAR(g.plus, 0.5, 0.02);
  EXPECT_NEAR(g.minus, 0.5, 0.02);
}

// The first-order conditionals A + s(1-m)dA and A - s(1+m)dA, fed through the
// Bayes marginal, reproduce the online update exactly (before clamping).
TEST(GaussianConditionals, LinearizedBayesReproducesUpdate) {
  apal::Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 * rng.below(100) + 51;
    std::vector<double> m(n);
    for (auto& x : m) x = 0.8 * (2 * rng.uniform() - 1);
    const auto state = BeliefState::from_means(m);
    const SpinVector xi = apal::random_pattern(n, rng);
    const int label = rng.below(2) ? 1 : -1;
    const auto next = apal::update(state, xi, label);
    for (std::size_t i = 0; i < n; i += 7) {
      const auto g = apal::gaussian_conditionals(state, xi, label, i);
      ASSERT_GT(g.lin_plus, 0.0);
      ASSERT_LT(g.lin_plus, 1.0);
      ASSERT_GT(g.lin_minus, 0.0);
      ASSERT_LT(g.lin_minus, 1.0);
      ASSERT_NEAR(apal::bayes_marginal(m[i], g.lin_plus, g.lin_minus), next[i], 1e-12);
      // The full Gaussian pair moves the mean the same way.
      const double full = apal::bayes_marginal(m[i], g.plus, g.minus);
      ASSERT_GE((full - m[i]) * label * xi[i], 0.0);
    }
  }
}

}  // namespace
