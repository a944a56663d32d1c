#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "apal/kernels.hpp"
#include "apal/rng.hpp"

namespace k = apal::kernels;

namespace {

// A random subset large enough that the omp variants take the parallel path.
std::vector<k::Code> random_members(unsigned n, double keep, apal::Rng& rng) {
  std::vector<k::Code> out;
  for (k::Code c = 0; c < (k::Code{1} << n); ++c) {
    if (rng.uniform() < keep) out.push_back(c);
  }
  return out;
}

class KernelAgreement : public ::testing::TestWithParam<unsigned> {};

TEST_P(KernelAgreement, SerialAndParallelGiveIdenticalCounts) {
  const unsigned n = GetParam();
  apal::Rng rng(n);
  const auto members = random_members(n, 0.6, rng);
  for (int trial = 0; trial < 3; ++trial) {
    const auto pattern = static_cast<k::Code>(rng.below(k::Code{1} << n));
    for (int label : {1, -1}) {
      EXPECT_EQ(k::serial::filter(members, pattern, label, n),
                k::omp::filter(members, pattern, label, n));
      const auto s = k::serial::conditional_counts(members, pattern, label, n);
      const auto p = k::omp::conditional_counts(members, pattern, label, n);
      EXPECT_EQ(s.size, p.size);
      EXPECT_EQ(s.correct, p.correct);
      EXPECT_EQ(s.plus_total, p.plus_total);
      EXPECT_EQ(s.plus_correct, p.plus_correct);
    }
    EXPECT_EQ(k::serial::count_positive(members, pattern, n),
              k::omp::count_positive(members, pattern, n));
    EXPECT_EQ(k::serial::distance_histogram(members, pattern, n),
              k::omp::distance_histogram(members, pattern, n));
  }
  EXPECT_EQ(k::serial::plus_counts(members, n), k::omp::plus_counts(members, n));
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelAgreement, ::testing::Values(3u, 9u, 17u, 19u));

TEST(Kernels, PairCountsAndBruteForceAgree) {
  apal::Rng rng(77);
  const auto members = random_members(15, 0.7, rng);
  EXPECT_EQ(k::serial::pair_agree_counts(members, 15), k::omp::pair_agree_counts(members, 15));
  const auto small = random_members(9, 0.5, rng);
  EXPECT_EQ(k::serial::brute_force_disagreements(small, 0x1a5, 9),
            k::omp::brute_force_disagreements(small, 0x1a5, 9));
}

TEST(Kernels, FilterPartitionsAndPreservesOrder) {
  apal::Rng rng(2);
  const auto members = random_members(17, 0.5, rng);
  const k::Code pattern = 0x0f0f0;
  const auto plus = k::omp::filter(members, pattern, 1, 17);
  const auto minus = k::omp::filter(members, pattern, -1, 17);
  EXPECT_EQ(plus.size() + minus.size(), members.size());
  EXPECT_EQ(plus.size(), k::omp::count_positive(members, pattern, 17));
  EXPECT_TRUE(std::ranges::is_sorted(plus));
  EXPECT_TRUE(std::ranges::is_sorted(minus));
}

TEST(Kernels, AgreesMatchesOverlapSign) {
  for (unsigned n : {1u, 3u, 5u}) {
    for (k::Code a = 0; a < (k::Code{1} << n); ++a) {
      for (k::Code b = 0; b < (k::Code{1} << n); ++b) {
        int dot = 0;
        for (unsigned i = 0; i < n; ++i) dot += (((a ^ b) >> i) & 1) ? -1 : 1;
        ASSERT_EQ(k::agrees(a, b, n), dot > 0);
      }
    }
  }
}

}  // namespace
