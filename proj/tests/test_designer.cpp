#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "apal/designer.hpp"
#include "apal/errors.hpp"

using apal::DesignContext;
using apal::SpinVector;

namespace {

SpinVector v(std::vector<int> s) { return SpinVector::from_spins(s); }

std::vector<std::int8_t> as_spins(const SpinVector& x) {
  std::vector<std::int8_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<std::int8_t>(x[i]);
  return out;
}

DesignContext random_context(std::size_t n, double lambda, std::size_t stored, apal::Rng& rng) {
  DesignContext ctx(n, lambda);
  std::vector<double> m(n);
  for (auto& x : m) x = 2 * rng.uniform() - 1;
  ctx.set_means(m);
  for (std::size_t k = 0; k < stored; ++k) ctx.remember(apal::random_pattern(n, rng));
  return ctx;
}

TEST(RandomPattern, ReproducibleAndUnbiased) {
  apal::Rng a(42), b(42);
  EXPECT_EQ(apal::random_pattern(3, a), apal::random_pattern(3, b));
  apal::Rng rng(1);
  std::vector<long> sum(7, 0);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    const auto x = apal::random_pattern(7, rng);
    for (std::size_t i = 0; i < 7; ++i) sum[i] += x[i];
  }
  for (long s : sum) EXPECT_NEAR(static_cast<double>(s) / draws, 0.0, 0.01);
}

TEST(Energy, BasicExamples) {
  DesignContext ctx(3);
  EXPECT_EQ(apal::energy_basic(v({1, -1, 1}), ctx), 0.0);
  const std::vector<double> m{0.5, 0.5, 0.5};
  ctx.set_means(m);
  EXPECT_DOUBLE_EQ(apal::energy_basic(v({1, 1, -1}), ctx), 0.5);
  EXPECT_DOUBLE_EQ(apal::energy_basic(v({-1, -1, 1}), ctx), 0.5);
}

TEST(Energy, OrthogonalExamples) {
  DesignContext ctx(3, 1.0);
  EXPECT_EQ(ctx.capacity(), 2u);
  // No memory: same as the basic energy.
  EXPECT_EQ(apal::energy_orthogonal(v({1, 1, 1}), ctx), 0.0);
  ctx.remember(v({1, 1, 1}));
  EXPECT_DOUBLE_EQ(apal::energy_orthogonal(v({1, 1, 1}), ctx), 9.0);
  EXPECT_DOUBLE_EQ(apal::energy_orthogonal(v({1, -1, 1}), ctx), 1.0);
  ctx.remember(v({1, -1, -1}));
  EXPECT_DOUBLE_EQ(apal::energy_orthogonal(v({1, 1, 1}), ctx), (9.0 + 1.0) / 2);
  // Oldest is evicted.
  ctx.remember(v({-1, -1, -1}));
  EXPECT_EQ(ctx.stored(), 2u);
  EXPECT_EQ(ctx.memory().front(), v({-1, -1, -1}));
  EXPECT_DOUBLE_EQ(apal::energy_orthogonal(v({1, 1, 1}), ctx), (1.0 + 9.0) / 2);
}

TEST(Energy, ZeroLambdaEqualsBasic) {
  apal::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 * rng.below(30) + 1;
    const auto ctx = random_context(n, 0.0, rng.below(n + 3), rng);
    const auto xi = apal::random_pattern(n, rng);
    ASSERT_EQ(apal::energy_orthogonal(xi, ctx), apal::energy_basic(xi, ctx));
  }
}

TEST(Energy, GramMatchesMemory) {
  apal::Rng rng(10);
  const auto ctx = random_context(9, 1.0, 20, rng);
  ASSERT_EQ(ctx.stored(), 8u);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      int c = 0;
      for (const auto& x : ctx.memory()) c += x[i] * x[j];
      ASSERT_EQ(ctx.gram()[i * 9 + j], c);
    }
  }
}

template <class E>
void check_incremental(double (*direct)(const SpinVector&, const DesignContext&)) {
  apal::Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 * rng.below(40) + 1;
    const auto ctx = random_context(n, 0.5 + rng.uniform(), rng.below(n + 2), rng);
    E energy(ctx);
    SpinVector x = apal::random_pattern(n, rng);
    energy.reset(as_spins(x));
    ASSERT_NEAR(energy.value(), direct(x, ctx), 1e-9);
    for (int step = 0; step < 200; ++step) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      SpinVector y = x;
      y.flip(i);
      ASSERT_NEAR(energy.delta(i), direct(y, ctx) - direct(x, ctx), 1e-9);
      if (rng.below(2)) {
        energy.flip(i);
        x = y;
      }
      ASSERT_NEAR(energy.value(), direct(x, ctx), 1e-9);
    }
  }
}

TEST(Energy, IncrementalBasicMatchesDirect) {
  check_incremental<apal::BasicEnergy>(apal::energy_basic);
}

TEST(Energy, IncrementalOrthogonalMatchesDirect) {
  check_incremental<apal::OrthogonalEnergy>(apal::energy_orthogonal);
}

TEST(Metropolis, AcceptanceRate) {
  apal::Rng rng(7);
  const double beta = 0.7, de = 1.3;
  const int trials = 100000;
  int accepted = 0;
  for (int k = 0; k < trials; ++k) accepted += apal::metropolis_accept(de, beta, rng);
  const double p = std::exp(-beta * de);
  EXPECT_NEAR(static_cast<double>(accepted) / trials, p, 3 * std::sqrt(p * (1 - p) / trials));
  for (double d : {0.0, -1e-9, -5.0}) EXPECT_TRUE(apal::metropolis_accept(d, 1e6, rng));
}

TEST(Schedule, Validation) {
  EXPECT_NO_THROW(apal::validate(apal::AnnealSchedule{}));
  EXPECT_THROW(apal::validate(apal::AnnealSchedule{.beta0 = 0.0}), apal::UsageError);
  EXPECT_THROW(apal::validate(apal::AnnealSchedule{.r_beta = 1.0}), apal::UsageError);
  EXPECT_THROW(apal::validate(apal::AnnealSchedule{.levels = 0}), apal::UsageError);
}

TEST(Anneal, ProposalCountReproducibilityAndReportedEnergy) {
  apal::Rng setup(5);
  const auto ctx = random_context(99, 1.0, 40, setup);
  apal::OrthogonalEnergy e1(ctx), e2(ctx);
  apal::Rng r1(77), r2(77);
  const apal::AnnealSchedule sched{.levels = 30};
  const auto a = apal::anneal(e1, 99, sched, r1);
  const auto b = apal::anneal(e2, 99, sched, r2);
  EXPECT_EQ(a.proposals, 30u * 99u);
  EXPECT_EQ(a.pattern, b.pattern);
  EXPECT_EQ(a.final_energy, b.final_energy);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_NEAR(a.final_energy, apal::energy_orthogonal(a.pattern, ctx), 1e-9);
}

TEST(Anneal, ZeroMeansGiveZeroEnergy) {
  DesignContext ctx(11);
  apal::BasicEnergy e(ctx);
  apal::Rng rng(1);
  EXPECT_EQ(apal::anneal(e, 11, {}, rng).final_energy, 0.0);
}

TEST(Anneal, LongerScheduleDoesNotHurtAndBeatsRandom) {
  apal::Rng setup(11);
  const auto ctx = random_context(99, 1.0, 0, setup);
  std::vector<double> short_run, long_run, random;
  for (int seed = 0; seed < 41; ++seed) {
    apal::BasicEnergy e(ctx);
    apal::Rng r1(seed), r2(seed), r3(seed);
    short_run.push_back(apal::anneal(e, 99, {.levels = 1}, r1).final_energy);
    long_run.push_back(apal::anneal(e, 99, {.levels = 100}, r2).final_energy);
    random.push_back(apal::energy_basic(apal::random_pattern(99, r3), ctx));
  }
  auto median = [](std::vector<double> x) {
    std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
    return x[x.size() / 2];
  };
  EXPECT_LE(median(long_run), median(short_run));
  EXPECT_LT(median(long_run), 0.1 * median(random));
}

}  // namespace
