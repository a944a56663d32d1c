#include "apal/deductive.hpp"

#include <bit>
#include <string>

#include "apal/errors.hpp"

namespace apal {

std::size_t deductive_query_bound(std::size_t n) {
  if (n <= 1) return n;
  // ceil(log2 n) == bit_width(n - 1)
  return n + static_cast<std::size_t>(std::bit_width(n - 1));
}

namespace {

template <class OnQuery>
BalancePoint bisect_prefix_overlap(const SpinVector& xi, TeacherOracle& oracle, OnQuery on_query) {
  if (xi.size() != oracle.size()) {
    throw UsageError("pattern length " + std::to_string(xi.size()) + " does not match teacher " +
                     std::to_string(oracle.size()));
  }
  const std::size_t start = oracle.query_count();
  std::size_t lo = 0;
  std::size_t hi = xi.size();
  const int lo_sign = oracle.classify(xi);
  on_query();
  // Invariant: sign q(lo) == lo_sign, sign q(hi) == -lo_sign.
  while (hi > lo + 1) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (oracle.classify(prefix_flip(xi, mid)) == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
    on_query();
  }
  return BalancePoint{lo, lo_sign, xi, oracle.query_count() - start};
}

}  // namespace

BalancePoint find_balance_index(const SpinVector& xi, TeacherOracle& oracle) {
  return bisect_prefix_overlap(xi, oracle, [] {});
}

int deduce_weight(std::size_t i, const BalancePoint& bp, TeacherOracle& oracle) {
  if (i >= bp.base_pattern.size()) {
    throw UsageError("weight index " + std::to_string(i) + " out of range");
  }
  SpinVector probe = prefix_flip(bp.base_pattern, bp.n_star);
  const int xi_i = probe[i];
  probe.flip(i);
  // q(n*) = q_sign; flipping entry i moves the overlap by -2 xi_i T_i.
  // Unchanged label means xi_i T_i = -q_sign.
  return oracle.classify(probe) == bp.q_sign ? -xi_i * bp.q_sign : xi_i * bp.q_sign;
}

DeductiveResult run_deductive(TeacherOracle& oracle, const SpinVector& xi_init,
                              const DeductiveObserver& observer) {
  const std::size_t n = oracle.size();
  const std::size_t start = oracle.query_count();
  SpinVector estimate = SpinVector::all_plus(n);
  auto notify = [&] {
    if (observer) observer(oracle.query_count() - start, estimate);
  };

  const BalancePoint bp = bisect_prefix_overlap(xi_init, oracle, notify);
  const SpinVector balanced = prefix_flip(xi_init, bp.n_star);

  long partial = 0;  // sum_{i < n-1} balanced_i T_i
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int t = deduce_weight(i, bp, oracle);
    estimate.set(i, t);
    partial += balanced[i] * t;
    notify();
  }
  const long last_term = bp.q_sign - partial;
  if (last_term != 1 && last_term != -1) {
    throw ConsistencyError("deduced weights are inconsistent with the balance point");
  }
  estimate.set(n - 1, static_cast<int>(last_term) * balanced[n - 1]);
  return DeductiveResult{std::move(estimate), oracle.query_count() - start};
}

}  // namespace apal
