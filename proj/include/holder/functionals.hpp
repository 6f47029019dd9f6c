#pragma once

#include <cmath>
#include <cstddef>

#include <Eigen/Core>

#include "holder/compensated_sum.hpp"
#include "holder/errors.hpp"
#include "holder/exponent.hpp"
#include "holder/positive_tuple.hpp"

namespace holder {

/// Below this |p| the quotient is evaluated by its p -> 0 limit. The
/// difference of log power sums cancels catastrophically as p -> 0 while the
/// limit itself is off by O(p).
inline constexpr double kSmallExponent = 1e-8;

/// Power sum of a tuple in factored form:
///   sum_k x_k^p = pivot^p * (n + excess)
/// with pivot = max(x) for p > 0 and min(x) for p < 0, so every scaled term
/// (x_k / pivot)^p lies in (0, 1], and
///   excess = sum_{k != pivot} expm1(p ln(x_k / pivot))  in  [-(n - 1), 0].
/// Keeping n separate lets two tuples of the same length cancel it exactly,
/// which is what keeps the quotient accurate as p -> 0.
template <typename Scalar>
struct ScaledPowerSum {
  Scalar pivot;
  Scalar excess;
  std::size_t n;

  /// ln(1 + excess / n), the log of the scaled sum less ln n.
  Scalar log_mean_scaled() const {
    using std::log1p;
    return log1p(excess / Scalar(n));
  }

  /// ln(n + excess), the log of the scaled sum.
  Scalar log_scaled() const {
    using std::log;
    return log(Scalar(n)) + log_mean_scaled();
  }
};

template <typename Scalar>
ScaledPowerSum<Scalar> scaled_power_sum(const PositiveTuple<Scalar>& x, double p) {
  const ArrayX<Scalar>& v = x.values();
  Eigen::Index pivot_index = 0;
  if (p > 0) {
    v.maxCoeff(&pivot_index);
  } else {
    v.minCoeff(&pivot_index);
  }
  const Scalar pivot = v[pivot_index];
  const ArrayX<Scalar> log_scaled = (v / pivot).log() * Scalar(p);
  CompensatedSum<Scalar> excess;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    using std::expm1;
    if (i != pivot_index) excess += expm1(log_scaled[i]);
  }
  return {pivot, excess.value(), x.size()};
}

/// Natural log of sum_k x_k^p, evaluated without forming any x_k^p.
template <typename Scalar>
Scalar log_power_sum(const PositiveTuple<Scalar>& x, double p) {
  using std::log;
  if (p == 0.0 || !std::isfinite(p)) {
    throw DomainError("log_power_sum needs a finite nonzero exponent");
  }
  const auto s = scaled_power_sum(x, p);
  return Scalar(p) * log(s.pivot) + s.log_scaled();
}

/// (sum_k a_k^p)^(1/p), with the max/min limits at p = +-inf.
template <typename Scalar>
Scalar holder_functional(const PositiveTuple<Scalar>& a, Exponent p) {
  using std::exp;
  switch (p.tag()) {
    case Exponent::Tag::PosInf: return a.max();
    case Exponent::Tag::NegInf: return a.min();
    case Exponent::Tag::Zero: throw UndefinedExponentError();
    case Exponent::Tag::Finite: break;
  }
  const auto s = scaled_power_sum(a, p.value());
  return s.pivot * exp(s.log_scaled() / Scalar(p.value()));
}

/// (prod_k a_k / b_k)^(1/n), accumulated as a compensated mean of logs.
template <typename Scalar>
Scalar geometric_mean_ratio(const PairedTuples<Scalar>& pair) {
  using std::exp;
  using std::isnormal;
  using std::log;
  const ArrayX<Scalar>& a = pair.a().values();
  const ArrayX<Scalar>& b = pair.b().values();
  CompensatedSum<Scalar> logs;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Scalar ratio = a[i] / b[i];
    // ln(a/b) is one rounding tighter, but a/b may leave the normal range.
    logs += isnormal(ratio) ? log(ratio) : log(a[i]) - log(b[i]);
  }
  return exp(logs.value() / Scalar(a.size()));
}

/// sum_k a_k / b_k with compensated summation.
template <typename Scalar>
Scalar rhs_ratio_sum(const PairedTuples<Scalar>& pair) {
  const ArrayX<Scalar> ratios = pair.a().values() / pair.b().values();
  return compensated_sum<Scalar>(ratios);
}

/// ||a||_p / ||b||_p over the extended exponent line. At p = 0 (and for
/// 0 < |p| < kSmallExponent) this is the geometric mean of the ratios.
template <typename Scalar>
Scalar lhs_quotient(const PairedTuples<Scalar>& pair, Exponent p) {
  using std::exp;
  using std::isfinite;
  using std::isnormal;
  using std::log;
  switch (p.tag()) {
    case Exponent::Tag::PosInf: return pair.a().max() / pair.b().max();
    case Exponent::Tag::NegInf: return pair.a().min() / pair.b().min();
    case Exponent::Tag::Zero: return geometric_mean_ratio(pair);
    case Exponent::Tag::Finite: break;
  }
  const double pv = p.value();
  if (std::abs(pv) < kSmallExponent) return geometric_mean_ratio(pair);

  const auto sa = scaled_power_sum(pair.a(), pv);
  const auto sb = scaled_power_sum(pair.b(), pv);
  const Scalar correction = (sa.log_mean_scaled() - sb.log_mean_scaled()) / Scalar(pv);
  const Scalar pivot_ratio = sa.pivot / sb.pivot;
  if (isnormal(pivot_ratio)) {
    return pivot_ratio * exp(correction);
  }
  // Pivot ratio left the normal range; the correction may bring it back.
  return exp(log(sa.pivot) - log(sb.pivot) + correction);
}

}  // namespace holder
