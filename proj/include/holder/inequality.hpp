#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "holder/errors.hpp"
#include "holder/exponent.hpp"
#include "holder/functionals.hpp"
#include "holder/positive_tuple.hpp"

namespace holder {

enum class Verdict { HoldsStrict, EqualityN1, NearEquality, Violated };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::HoldsStrict: return "HOLDS_STRICT";
    case Verdict::EqualityN1: return "EQUALITY_N1";
    case Verdict::NearEquality: return "NEAR_EQUALITY";
    case Verdict::Violated: return "VIOLATED";
  }
  return "UNKNOWN";
}

/// Default near-equality band, relative to the right-hand side.
inline constexpr double kDefaultRelativeBand = 1e-12;

template <typename Scalar = double>
struct InequalityReport {
  Exponent p;
  Scalar lhs;
  Scalar rhs;
  Scalar gap;  // rhs - lhs, exactly as computed
  Verdict verdict;
  std::size_t n;
};

/// Verdict for a strict inequality lhs < rhs measured inside a band of
/// relative_band * rhs. n == 1 is the analytic equality case.
template <typename Scalar>
Verdict classify(Scalar gap, Scalar rhs, std::size_t n, double relative_band) {
  using std::abs;
  if (n == 1) return Verdict::EqualityN1;
  const Scalar band = Scalar(relative_band) * rhs;
  if (gap > band) return Verdict::HoldsStrict;
  if (abs(gap) <= band) return Verdict::NearEquality;
  return Verdict::Violated;
}

/// ||a||_p / ||b||_p < sum_k a_k / b_k, evaluated at any point of the
/// extended exponent line. At p = 0 the left side is the geometric mean of
/// the ratios.
template <typename Scalar>
InequalityReport<Scalar> check_main_inequality(const PairedTuples<Scalar>& pair, Exponent p,
                                               double relative_band = kDefaultRelativeBand) {
  const Scalar lhs = lhs_quotient(pair, p);
  const Scalar rhs = rhs_ratio_sum(pair);
  const Scalar gap = rhs - lhs;
  return {p, lhs, rhs, gap, classify(gap, rhs, pair.size(), relative_band), pair.size()};
}

template <typename Scalar = double>
struct AmGmChain {
  Scalar gm;   // geometric mean of the ratios
  Scalar am;   // arithmetic mean of the ratios
  Scalar sum;  // sum of the ratios
};

/// gm <= am <= sum for the ratios a_k / b_k.
template <typename Scalar>
AmGmChain<Scalar> am_gm_chain(const PairedTuples<Scalar>& pair) {
  const Scalar sum = rhs_ratio_sum(pair);
  return {geometric_mean_ratio(pair), sum / Scalar(pair.size()), sum};
}

/// Relative change in ||a||_p when the last two entries are replaced by
/// their own functional (a_{n-1}^p + a_n^p)^(1/p). Zero in exact arithmetic.
template <typename Scalar>
Scalar merge_identity_residual(const PositiveTuple<Scalar>& a, Exponent p) {
  using std::abs;
  if (!p.is_finite()) throw DomainError("merge identity needs a finite exponent");
  const std::size_t n = a.size();
  if (n < 2) throw DomainError("merge identity needs at least two entries");

  const auto& v = a.values();
  const auto last = static_cast<Eigen::Index>(n);
  const PositiveTuple<Scalar> tail(v.segment(last - 2, 2));
  ArrayX<Scalar> merged(last - 1);
  merged.head(last - 2) = v.head(last - 2);
  merged[last - 2] = holder_functional(tail, p);

  const Scalar direct = holder_functional(a, p);
  if (!std::isnormal(direct)) {
    throw DomainError("merge identity: functional is out of floating range at p = " +
                      p.to_string());
  }
  const Scalar via_merge = holder_functional(PositiveTuple<Scalar>(merged), p);
  return abs(direct - via_merge) / direct;
}

template <typename Scalar = double>
struct GapPoint {
  Scalar lhs;
  Scalar rhs;
  Scalar gap;
  Verdict verdict;
};

template <typename Scalar = double>
struct GapCurve {
  std::vector<Exponent> grid;
  std::vector<GapPoint<Scalar>> points;
};

/// check_main_inequality sampled along a grid of exponents, in grid order.
template <typename Scalar>
GapCurve<Scalar> gap_curve(const PairedTuples<Scalar>& pair, const std::vector<Exponent>& grid,
                           double relative_band = kDefaultRelativeBand) {
  if (grid.empty()) throw DomainError("gap curve grid must be nonempty");
  GapCurve<Scalar> curve{grid, {}};
  curve.points.reserve(grid.size());
  for (const Exponent& p : grid) {
    const auto r = check_main_inequality(pair, p, relative_band);
    curve.points.push_back({r.lhs, r.rhs, r.gap, r.verdict});
  }
  return curve;
}

}  // namespace holder
