#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace apal {

/// Ising vector of odd length N with entries in {-1, +1}.
///
/// Stored one bit per spin (+1 <-> bit set), 64 spins per word, unused high
/// bits of the last word kept at zero so that word-wise comparisons and
/// popcounts are exact. Used for weight vectors and patterns alike.
class SpinVector {
 public:
  SpinVector() = default;

  // All entries +1. Throws UsageError unless n is positive and odd.
  static SpinVector all_plus(std::size_t n);
  // Throws UsageError on even length or an entry other than +-1.
  static SpinVector from_spins(std::span<const int> spins);
  // Bit i of `code` set <-> entry i is +1. Requires n <= 64.
  static SpinVector from_code(std::uint64_t code, std::size_t n);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  int operator[](std::size_t i) const {
    return ((words_[i >> 6] >> (i & 63)) & 1u) ? 1 : -1;
  }
  void set(std::size_t i, int spin);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  SpinVector operator-() const;
  bool operator==(const SpinVector& other) const = default;

  std::vector<int> to_spins() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }
  // Packed code for n <= 64.
  std::uint64_t code() const;
  // Clears padding bits above n; call after writing raw words.
  void normalize();

 private:
  explicit SpinVector(std::size_t n);

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Number of disagreeing entries.
std::size_t hamming_distance(const SpinVector& a, const SpinVector& b);

// Sum_i a_i b_i. Odd for odd N.
long overlap(const SpinVector& a, const SpinVector& b);

// sign(overlap(pattern, weights)); never 0 for odd N.
int classify(const SpinVector& pattern, const SpinVector& weights);

// Negates entries [0, n). n == size() negates everything.
SpinVector prefix_flip(const SpinVector& pattern, std::size_t n);

// Fraction of disagreeing entries, in [0, 1].
double hamming_error(const SpinVector& estimate, const SpinVector& truth);

/// Hidden teacher vector. Every label handed to a learner goes through
/// classify() here, so the query budget is counted by the oracle itself.
class TeacherOracle {
 public:
  explicit TeacherOracle(SpinVector truth);

  int classify(const SpinVector& pattern);
  std::size_t query_count() const { return queries_; }
  std::size_t size() const { return truth_.size(); }

  // Only for scoring and tests; learners never call this.
  const SpinVector& reveal() const { return truth_; }

 private:
  SpinVector truth_;
  std::size_t queries_ = 0;
};

}  // namespace apal
