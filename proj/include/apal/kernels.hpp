#pragma once

// Data-parallel loops over explicitly enumerated version spaces.
//
// Members and patterns are packed codes: bit i set <-> entry i is +1, N <= 25.
// Two implementations share one interface: `serial` is the reference used in
// tests, `omp` partitions members across OpenMP threads. All results are
// integer counts or order-preserving copies, so both variants agree exactly
// for any thread count.

#include <cstdint>
#include <span>
#include <vector>

namespace apal::kernels {

using Code = std::uint32_t;

// overlap(J, xi) > 0  <=>  popcount(J ^ xi) <= (N - 1) / 2
inline bool agrees(Code member, Code pattern, unsigned n) {
  return static_cast<unsigned>(__builtin_popcount(member ^ pattern)) <= (n - 1) / 2;
}

// Per-coordinate counts needed for exact Bayes conditionals.
struct ConditionalCounts {
  std::uint64_t size = 0;
  std::uint64_t correct = 0;                // members classifying (xi, sigma) correctly
  std::vector<std::uint64_t> plus_total;    // members with J_i = +1
  std::vector<std::uint64_t> plus_correct;  // ... that also classify correctly
};

namespace serial {

// Members J with sign(J . xi) == label, in original order.
std::vector<Code> filter(std::span<const Code> members, Code pattern, int label, unsigned n);

// Number of members with sign(J . xi) == +1.
std::uint64_t count_positive(std::span<const Code> members, Code pattern, unsigned n);

// Number of members with J_i == +1, for each i.
std::vector<std::uint64_t> plus_counts(std::span<const Code> members, unsigned n);

// Row-major N x N: number of members with J_i == J_j.
std::vector<std::uint64_t> pair_agree_counts(std::span<const Code> members, unsigned n);

// Histogram (length N + 1) of Hamming distances from each member to `ref`.
std::vector<std::uint64_t> distance_histogram(std::span<const Code> members, Code ref,
                                              unsigned n);

ConditionalCounts conditional_counts(std::span<const Code> members, Code pattern, int label,
                                     unsigned n);

// Misclassified (pattern, member) pairs over all 2^N test patterns, judged
// against the teacher `truth`. Cost 2^N * |members|; test oracle only.
std::uint64_t brute_force_disagreements(std::span<const Code> members, Code truth, unsigned n);

}  // namespace serial

namespace omp {

std::vector<Code> filter(std::span<const Code> members, Code pattern, int label, unsigned n);
std::uint64_t count_positive(std::span<const Code> members, Code pattern, unsigned n);
std::vector<std::uint64_t> plus_counts(std::span<const Code> members, unsigned n);
std::vector<std::uint64_t> pair_agree_counts(std::span<const Code> members, unsigned n);
std::vector<std::uint64_t> distance_histogram(std::span<const Code> members, Code ref,
                                              unsigned n);
ConditionalCounts conditional_counts(std::span<const Code> members, Code pattern, int label,
                                     unsigned n);
std::uint64_t brute_force_disagreements(std::span<const Code> members, Code truth, unsigned n);

// Threads the omp variant will use (1 when built without OpenMP).
int max_threads();

}  // namespace omp

}  // namespace apal::kernels
