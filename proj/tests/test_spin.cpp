#include <gtest/gtest.h>

#include <vector>

#include "apal/designer.hpp"
#include "apal/errors.hpp"
#include "apal/spin.hpp"

using apal::SpinVector;

namespace {

SpinVector v(std::vector<int> s) { return SpinVector::from_spins(s); }

TEST(SpinVector, RejectsEvenLengthAndBadEntries) {
  EXPECT_THROW(SpinVector::all_plus(4), apal::UsageError);
  EXPECT_THROW(SpinVector::all_plus(0), apal::UsageError);
  EXPECT_THROW(v({1, 0, 1}), apal::UsageError);
  EXPECT_THROW(v({1, -1}), apal::UsageError);
  EXPECT_NO_THROW(v({1}));
}

TEST(SpinVector, RoundTripsSpinsAcrossWordBoundary) {
  std::vector<int> spins(131);
  for (std::size_t i = 0; i < spins.size(); ++i) spins[i] = (i * 7 % 3 == 0) ? 1 : -1;
  const SpinVector x = SpinVector::from_spins(spins);
  EXPECT_EQ(x.to_spins(), spins);
  EXPECT_EQ((-x).to_spins()[64], -spins[64]);
  EXPECT_EQ(-(-x), x);
}

TEST(Overlap, Examples) {
  const SpinVector a = v({1, -1, 1, 1, -1});
  EXPECT_EQ(apal::overlap(a, a), 5);
  EXPECT_EQ(apal::overlap(a, -a), -5);
  EXPECT_EQ(apal::overlap(v({1, -1, 1}), v({1, 1, 1})), 1);
  EXPECT_THROW(apal::overlap(v({1, 1, 1}), v({1, 1, 1, 1, 1})), apal::UsageError);
}

TEST(Classify, Examples) {
  const SpinVector t = v({1, 1, 1});
  EXPECT_EQ(apal::classify(v({1, 1, 1}), t), 1);
  EXPECT_EQ(apal::classify(v({-1, -1, 1}), t), -1);
  EXPECT_EQ(apal::classify(v({1, -1, 1}), t), 1);
}

TEST(PrefixFlip, Examples) {
  const SpinVector xi = v({1, 1, 1});
  EXPECT_EQ(apal::prefix_flip(xi, 0), xi);
  EXPECT_EQ(apal::prefix_flip(xi, 3), -xi);
  EXPECT_EQ(apal::prefix_flip(xi, 2), v({-1, -1, 1}));
  EXPECT_THROW(apal::prefix_flip(xi, 4), apal::UsageError);

  const SpinVector t = v({1, -1, 1});
  EXPECT_EQ(apal::overlap(apal::prefix_flip(xi, 3), t), -apal::overlap(xi, t));
}

TEST(HammingError, Examples) {
  const SpinVector a = v({1, -1, 1, 1, -1});
  SpinVector b = a;
  EXPECT_EQ(apal::hamming_error(a, a), 0.0);
  EXPECT_EQ(apal::hamming_error(a, -a), 1.0);
  b.flip(3);
  EXPECT_DOUBLE_EQ(apal::hamming_error(b, a), 0.2);
}

TEST(TeacherOracle, CountsEveryQuery) {
  apal::TeacherOracle oracle(v({1, -1, 1}));
  EXPECT_EQ(oracle.query_count(), 0u);
  EXPECT_EQ(oracle.classify(v({1, 1, 1})), 1);
  EXPECT_EQ(oracle.classify(v({-1, 1, -1})), -1);
  EXPECT_EQ(oracle.query_count(), 2u);
}

// Randomized invariants over many sizes, including multi-word vectors.
TEST(SpinProperties, RandomizedInvariants) {
  apal::Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 * rng.below(100) + 1;
    const SpinVector a = apal::random_pattern(n, rng);
    const SpinVector b = apal::random_pattern(n, rng);
    const long q = apal::overlap(a, b);
    ASSERT_EQ(std::labs(q) % 2, 1) << "overlap must be odd";
    ASSERT_EQ(apal::classify(a, b), -apal::classify(-a, b));
    ASSERT_EQ(apal::hamming_error(a, b), apal::hamming_error(b, a));
    ASSERT_EQ(apal::hamming_error(a, b) == 0.0, a == b);
    const std::size_t k = rng.below(n + 1);
    ASSERT_EQ(apal::prefix_flip(apal::prefix_flip(a, k), k), a);
    // Direct evaluation of the prefix-flipped overlap.
    long direct = 0;
    for (std::size_t i = 0; i < n; ++i) direct += (i < k ? -a[i] : a[i]) * b[i];
    ASSERT_EQ(apal::overlap(apal::prefix_flip(a, k), b), direct);
  }
}

}  // namespace
