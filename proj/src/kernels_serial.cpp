#include "apal/kernels.hpp"

namespace apal::kernels::serial {

std::vector<Code> filter(std::span<const Code> members, Code pattern, int label, unsigned n) {
  const bool want_positive = label > 0;
  std::vector<Code> out;
  out.reserve(members.size() / 2 + 1);
  for (Code j : members) {
    if (agrees(j, pattern, n) == want_positive) out.push_back(j);
  }
  return out;
}

std::uint64_t count_positive(std::span<const Code> members, Code pattern, unsigned n) {
  std::uint64_t count = 0;
  for (Code j : members) count += agrees(j, pattern, n) ? 1 : 0;
  return count;
}

std::vector<std::uint64_t> plus_counts(std::span<const Code> members, unsigned n) {
  std::vector<std::uint64_t> counts(n, 0);
  for (Code j : members) {
    for (unsigned i = 0; i < n; ++i) counts[i] += (j >> i) & 1u;
  }
  return counts;
}

std::vector<std::uint64_t> pair_agree_counts(std::span<const Code> members, unsigned n) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) * n, 0);
  for (Code j : members) {
    for (unsigned a = 0; a < n; ++a) {
      const Code same = ~(j ^ ((j >> a) & 1u ? ~Code{0} : Code{0}));
      for (unsigned b = 0; b < n; ++b) counts[a * n + b] += (same >> b) & 1u;
    }
  }
  return counts;
}

std::vector<std::uint64_t> distance_histogram(std::span<const Code> members, Code ref,
                                              unsigned n) {
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (Code j : members) ++hist[__builtin_popcount(j ^ ref)];
  return hist;
}

ConditionalCounts conditional_counts(std::span<const Code> members, Code pattern, int label,
                                     unsigned n) {
  ConditionalCounts c;
  c.size = members.size();
  c.plus_total.assign(n, 0);
  c.plus_correct.assign(n, 0);
  const bool want_positive = label > 0;
  for (Code j : members) {
    const bool ok = agrees(j, pattern, n) == want_positive;
    c.correct += ok ? 1 : 0;
    for (unsigned i = 0; i < n; ++i) {
      const unsigned bit = (j >> i) & 1u;
      c.plus_total[i] += bit;
      c.plus_correct[i] += ok ? bit : 0;
    }
  }
  return c;
}

std::uint64_t brute_force_disagreements(std::span<const Code> members, Code truth, unsigned n) {
  std::uint64_t bad = 0;
  const Code patterns = Code{1} << n;
  for (Code xi = 0; xi < patterns; ++xi) {
    const bool teacher = agrees(truth, xi, n);
    for (Code j : members) bad += (agrees(j, xi, n) != teacher) ? 1 : 0;
  }
  return bad;
}

}  // namespace apal::kernels::serial
