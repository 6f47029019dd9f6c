#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "holder/compensated_sum.hpp"
#include "holder/errors.hpp"
#include "holder/positive_tuple.hpp"

namespace holder {

/// A permutation sigma of {0, ..., n-1}; a_k is paired with b_{sigma[k]}.
using Permutation = std::vector<std::size_t>;

template <typename Scalar = double>
struct PermutationBounds {
  Scalar min_sum;
  Scalar max_sum;
  Permutation min_perm;
  Permutation max_perm;
};

/// sum_k a_k / b_{sigma(k)}, accumulated in the caller's index order.
template <typename Scalar>
Scalar permuted_ratio_sum(const PairedTuples<Scalar>& pair, const Permutation& sigma) {
  if (sigma.size() != pair.size()) throw LengthMismatchError(sigma.size(), pair.size());
  CompensatedSum<Scalar> sum;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    sum += pair.a()[k] / pair.b()[sigma[k]];
  }
  return sum.value();
}

namespace detail {

template <typename Scalar>
std::vector<std::size_t> ascending_order(const PositiveTuple<Scalar>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  return order;
}

}  // namespace detail

/// Extremal pairings of the ratio sum. Pairing both tuples in the same
/// sorted order gives the minimum; pairing them in opposite orders gives the
/// maximum. Ties are broken by a stable sort, so the witnesses are
/// deterministic.
template <typename Scalar>
PermutationBounds<Scalar> extremal_ratio_sums(const PairedTuples<Scalar>& pair) {
  const std::size_t n = pair.size();
  const auto a_order = detail::ascending_order(pair.a());
  const auto b_order = detail::ascending_order(pair.b());

  Permutation min_perm(n);
  Permutation max_perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    min_perm[a_order[i]] = b_order[i];
    max_perm[a_order[i]] = b_order[n - 1 - i];
  }
  const Scalar min_sum = permuted_ratio_sum(pair, min_perm);
  const Scalar max_sum = permuted_ratio_sum(pair, max_perm);
  return {min_sum, max_sum, std::move(min_perm), std::move(max_perm)};
}

inline constexpr std::size_t kBruteForceMaxSize = 8;

namespace detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2. Enough headroom to rank
/// pairings whose double sums round to the same value.
template <typename Scalar>
struct DoubleDouble {
  Scalar hi{0};
  Scalar lo{0};

  static DoubleDouble quotient(Scalar a, Scalar b) {
    using std::fma;
    const Scalar q = a / b;
    return {q, fma(-q, b, a) / b};
  }

  DoubleDouble& operator+=(const DoubleDouble& x) {
    const Scalar s = hi + x.hi;
    const Scalar bb = s - hi;
    Scalar e = (hi - (s - bb)) + (x.hi - bb);
    e += lo + x.lo;
    hi = s + e;
    lo = e - (hi - s);
    return *this;
  }

  friend bool operator<(const DoubleDouble& x, const DoubleDouble& y) {
    return x.hi < y.hi || (x.hi == y.hi && x.lo < y.lo);
  }
};

template <typename Scalar>
DoubleDouble<Scalar> permuted_ratio_sum_dd(const PairedTuples<Scalar>& pair,
                                           const Permutation& sigma) {
  DoubleDouble<Scalar> sum;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    sum += DoubleDouble<Scalar>::quotient(pair.a()[k], pair.b()[sigma[k]]);
  }
  return sum;
}

}  // namespace detail

/// Exhaustive search over all n! pairings. Test oracle for
/// extremal_ratio_sums; witnesses are the lexicographically first
/// permutations attaining each extreme, ranked in double-double precision.
template <typename Scalar>
PermutationBounds<Scalar> brute_force_extrema(const PairedTuples<Scalar>& pair) {
  const std::size_t n = pair.size();
  if (n > kBruteForceMaxSize) throw InstanceTooLargeError(n, kBruteForceMaxSize);

  Permutation sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  auto lowest = detail::permuted_ratio_sum_dd(pair, sigma);
  auto highest = lowest;
  Permutation min_perm = sigma;
  Permutation max_perm = sigma;
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    const auto s = detail::permuted_ratio_sum_dd(pair, sigma);
    if (s < lowest) {
      lowest = s;
      min_perm = sigma;
    }
    if (highest < s) {
      highest = s;
      max_perm = sigma;
    }
  }
  return {permuted_ratio_sum(pair, min_perm), permuted_ratio_sum(pair, max_perm),
          std::move(min_perm), std::move(max_perm)};
}

}  // namespace holder
