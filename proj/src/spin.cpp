#include "apal/spin.hpp"

#include <bit>
#include <string>

#include "apal/errors.hpp"

namespace apal {

namespace {

void require_odd(std::size_t n) {
  if (n == 0 || n % 2 == 0) {
    throw UsageError("spin vector length must be positive and odd, got " + std::to_string(n));
  }
}

void require_same_length(const SpinVector& a, const SpinVector& b) {
  if (a.size() != b.size()) {
    throw UsageError("length mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

}  // namespace

SpinVector::SpinVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

SpinVector SpinVector::all_plus(std::size_t n) {
  require_odd(n);
  SpinVector v(n);
  for (auto& w : v.words_) w = ~std::uint64_t{0};
  v.normalize();
  return v;
}

SpinVector SpinVector::from_spins(std::span<const int> spins) {
  require_odd(spins.size());
  SpinVector v(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw UsageError("entry " + std::to_string(i) + " is " + std::to_string(spins[i]) +
                       ", expected +1 or -1");
    }
    v.set(i, spins[i]);
  }
  return v;
}

SpinVector SpinVector::from_code(std::uint64_t code, std::size_t n) {
  require_odd(n);
  if (n > 64) throw UsageError("from_code supports at most 64 entries");
  SpinVector v(n);
  v.words_[0] = code;
  v.normalize();
  return v;
}

void SpinVector::set(std::size_t i, int spin) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (spin > 0) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

SpinVector SpinVector::operator-() const {
  SpinVector out = *this;
  for (auto& w : out.words_) w = ~w;
  out.normalize();
  return out;
}

std::vector<int> SpinVector::to_spins() const {
  std::vector<int> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

std::uint64_t SpinVector::code() const {
  if (n_ > 64) throw UsageError("code() supports at most 64 entries");
  return words_.empty() ? 0 : words_[0];
}

void SpinVector::normalize() {
  const std::size_t tail = n_ & 63;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

std::size_t hamming_distance(const SpinVector& a, const SpinVector& b) {
  require_same_length(a, b);
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t k = 0; k < wa.size(); ++k) d += std::popcount(wa[k] ^ wb[k]);
  return d;
}

long overlap(const SpinVector& a, const SpinVector& b) {
  const auto d = static_cast<long>(hamming_distance(a, b));
  return static_cast<long>(a.size()) - 2 * d;
}

int classify(const SpinVector& pattern, const SpinVector& weights) {
  const long q = overlap(pattern, weights);
  if (q == 0) throw UsageError("zero overlap; spin vectors must have odd length");
  return q > 0 ? 1 : -1;
}

SpinVector prefix_flip(const SpinVector& pattern, std::size_t n) {
  if (n > pattern.size()) {
    throw UsageError("prefix length " + std::to_string(n) + " exceeds " +
                     std::to_string(pattern.size()));
  }
  SpinVector out = pattern;
  auto words = out.mutable_words();
  const std::size_t full = n >> 6;
  for (std::size_t k = 0; k < full; ++k) words[k] = ~words[k];
  if ((n & 63) != 0) words[full] ^= (std::uint64_t{1} << (n & 63)) - 1;
  out.normalize();
  return out;
}

double hamming_error(const SpinVector& estimate, const SpinVector& truth) {
  return static_cast<double>(hamming_distance(estimate, truth)) /
         static_cast<double>(truth.size());
}

TeacherOracle::TeacherOracle(SpinVector truth) : truth_(std::move(truth)) {
  if (truth_.empty()) throw UsageError("teacher vector is empty");
}

int TeacherOracle::classify(const SpinVector& pattern) {
  const int label = apal::classify(pattern, truth_);
  ++queries_;
  return label;
}

}  // namespace apal
