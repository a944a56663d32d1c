#pragma once

#include <cstddef>
#include <functional>

#include "apal/spin.hpp"

namespace apal {

/// Result of the bisection on the prefix-flip overlap q(n) = prefix_flip(xi, n) . T.
/// At n_star the overlap is exactly q_sign (i.e. +-1), and q(n_star + 1) = -q_sign.
struct BalancePoint {
  std::size_t n_star = 0;
  int q_sign = 1;
  SpinVector base_pattern;
  std::size_t queries_used = 0;
};

// N + ceil(log2 N): the worst-case number of queries used by run_deductive.
std::size_t deductive_query_bound(std::size_t n);

// Locates a sign change of q(n) with at most 1 + ceil(log2 N) queries.
// The sign of q(N) = -q(0) is never queried.
BalancePoint find_balance_index(const SpinVector& xi, TeacherOracle& oracle);

// Deduces weight i (0-based) with one query: flip entry i of prefix_flip(xi, n_star).
int deduce_weight(std::size_t i, const BalancePoint& bp, TeacherOracle& oracle);

struct DeductiveResult {
  SpinVector estimate;
  std::size_t queries = 0;
};

// Called after every query with the number of queries made so far and the
// current estimate (entries not yet deduced are reported as +1).
using DeductiveObserver = std::function<void(std::size_t queries, const SpinVector& estimate)>;

// Exact recovery of the teacher within deductive_query_bound(N) queries. The
// final weight is solved from q(n_star) = q_sign instead of being queried.
DeductiveResult run_deductive(TeacherOracle& oracle, const SpinVector& xi_init,
                              const DeductiveObserver& observer = {});

}  // namespace apal
