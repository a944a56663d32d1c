#include "apal/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace apal::kernels::omp {

namespace {

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_num_threads();
#else
  return 1;
#endif
}

// Contiguous block [begin, end) of `total` items owned by thread `t` of `nt`.
std::pair<std::size_t, std::size_t> block(std::size_t total, int t, int nt) {
  const std::size_t per = total / nt;
  const std::size_t extra = total % nt;
  const std::size_t begin = t * per + std::min<std::size_t>(t, extra);
  return {begin, begin + per + (static_cast<std::size_t>(t) < extra ? 1 : 0)};
}

// Below this many members the thread team costs more than it saves.
constexpr std::size_t kParallelCutoff = 1 << 14;

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Code> filter(std::span<const Code> members, Code pattern, int label, unsigned n) {
  if (members.size() < kParallelCutoff) return serial::filter(members, pattern, label, n);
  const bool want_positive = label > 0;
  std::vector<std::size_t> kept(max_threads() + 1, 0);
  std::vector<Code> out;
#pragma omp parallel
  {
    const int t = thread_id();
    const int nt = thread_count();
    const auto [begin, end] = block(members.size(), t, nt);
    std::size_t local = 0;
    for (std::size_t k = begin; k < end; ++k) {
      local += (agrees(members[k], pattern, n) == want_positive) ? 1 : 0;
    }
    kept[t + 1] = local;
#pragma omp barrier
#pragma omp single
    {
      for (int s = 0; s < nt; ++s) kept[s + 1] += kept[s];
      out.resize(kept[nt]);
    }
    std::size_t pos = kept[t];
    for (std::size_t k = begin; k < end; ++k) {
      if (agrees(members[k], pattern, n) == want_positive) out[pos++] = members[k];
    }
  }
  return out;
}

std::uint64_t count_positive(std::span<const Code> members, Code pattern, unsigned n) {
  if (members.size() < kParallelCutoff) return serial::count_positive(members, pattern, n);
  std::uint64_t count = 0;
  const auto size = static_cast<std::ptrdiff_t>(members.size());
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::ptrdiff_t k = 0; k < size; ++k) count += agrees(members[k], pattern, n) ? 1 : 0;
  return count;
}

std::vector<std::uint64_t> plus_counts(std::span<const Code> members, unsigned n) {
  if (members.size() < kParallelCutoff) return serial::plus_counts(members, n);
  std::vector<std::uint64_t> counts(n, 0);
#pragma omp parallel
  {
    const auto [begin, end] = block(members.size(), thread_id(), thread_count());
    const auto local = serial::plus_counts(members.subspan(begin, end - begin), n);
#pragma omp critical
    for (unsigned i = 0; i < n; ++i) counts[i] += local[i];
  }
  return counts;
}

std::vector<std::uint64_t> pair_agree_counts(std::span<const Code> members, unsigned n) {
  if (members.size() < kParallelCutoff) return serial::pair_agree_counts(members, n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) * n, 0);
#pragma omp parallel
  {
    const auto [begin, end] = block(members.size(), thread_id(), thread_count());
    const auto local = serial::pair_agree_counts(members.subspan(begin, end - begin), n);
#pragma omp critical
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
  }
  return counts;
}

std::vector<std::uint64_t> distance_histogram(std::span<const Code> members, Code ref,
                                              unsigned n) {
  if (members.size() < kParallelCutoff) return serial::distance_histogram(members, ref, n);
  std::vector<std::uint64_t> hist(n + 1, 0);
#pragma omp parallel
  {
    const auto [begin, end] = block(members.size(), thread_id(), thread_count());
    const auto local = serial::distance_histogram(members.subspan(begin, end - begin), ref, n);
#pragma omp critical
    for (unsigned d = 0; d <= n; ++d) hist[d] += local[d];
  }
  return hist;
}

ConditionalCounts conditional_counts(std::span<const Code> members, Code pattern, int label,
                                     unsigned n) {
  if (members.size() < kParallelCutoff) {
    return serial::conditional_counts(members, pattern, label, n);
  }
  ConditionalCounts total;
  total.size = members.size();
  total.plus_total.assign(n, 0);
  total.plus_correct.assign(n, 0);
#pragma omp parallel
  {
    const auto [begin, end] = block(members.size(), thread_id(), thread_count());
    const auto local =
        serial::conditional_counts(members.subspan(begin, end - begin), pattern, label, n);
#pragma omp critical
    {
      total.correct += local.correct;
      for (unsigned i = 0; i < n; ++i) {
        total.plus_total[i] += local.plus_total[i];
        total.plus_correct[i] += local.plus_correct[i];
      }
    }
  }
  return total;
}

std::uint64_t brute_force_disagreements(std::span<const Code> members, Code truth, unsigned n) {
  std::uint64_t bad = 0;
  const auto patterns = static_cast<std::ptrdiff_t>(std::uint64_t{1} << n);
#pragma omp parallel for reduction(+ : bad) schedule(static)
  for (std::ptrdiff_t xi = 0; xi < patterns; ++xi) {
    const auto code = static_cast<Code>(xi);
    const bool teacher = agrees(truth, code, n);
    for (Code j : members) bad += (agrees(j, code, n) != teacher) ? 1 : 0;
  }
  return bad;
}

}  // namespace apal::kernels::omp
