#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>

#include "holder/compensated_sum.hpp"
#include "holder/errors.hpp"
#include "holder/exponent.hpp"
#include "holder/functionals.hpp"
#include "holder/inequality.hpp"

namespace holder {

/// Orientation of the power-sum inequality
///   sum a_k^p  (<= | >=)  (sum b_k^p) * (sum a_k / b_k)^p.
/// Raising the quotient inequality to a negative power flips it, so the
/// direction is LE for p > 0 and GE for p < 0.
enum class Direction { LE, GE };

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::LE ? "LE" : "GE";
}

/// Running log(sum_k exp(t_k)) with a moving shift: the partial sum is kept
/// relative to the largest term seen so far, so it stays in [1, count].
template <typename Scalar>
class LogSumAccumulator {
 public:
  void add(Scalar t) {
    using std::exp;
    if (empty_) {
      shift_ = t;
      scaled_ = CompensatedSum<Scalar>(Scalar(1));
      empty_ = false;
    } else if (t <= shift_) {
      scaled_ += exp(t - shift_);
    } else {
      scaled_ *= exp(shift_ - t);
      scaled_ += Scalar(1);
      shift_ = t;
    }
  }

  Scalar value() const {
    using std::log;
    if (empty_) return -std::numeric_limits<Scalar>::infinity();
    return shift_ + log(scaled_.value());
  }

 private:
  bool empty_ = true;
  Scalar shift_{0};
  CompensatedSum<Scalar> scaled_;
};

/// Both sides of the power-sum inequality on the log scale.
template <typename Scalar = double>
struct DivergenceProbe {
  std::size_t count;
  Scalar log_left;   // ln sum a_k^p
  Scalar log_right;  // ln sum b_k^p + p ln sum a_k / b_k
  bool within_band;  // log_left <= log_right up to the band
};

/// Prefix verification of the power-sum form of the main inequality over a
/// paired stream. Single owner; not for concurrent mutation.
template <typename Scalar = double>
class RatioStreamAccumulator {
 public:
  explicit RatioStreamAccumulator(Exponent p) : p_(p) {
    if (!p.is_finite()) {
      throw DomainError("stream accumulators need a finite nonzero exponent, got " +
                        p.to_string());
    }
  }

  void push(Scalar a, Scalar b) {
    using std::isfinite;
    using std::log;
    if (!(a > Scalar(0)) || !isfinite(a) || !(b > Scalar(0)) || !isfinite(b)) {
      throw DomainError("stream element " + std::to_string(count_) +
                        " is not a pair of strictly positive finite reals");
    }
    const Scalar p = Scalar(p_.value());
    const Scalar log_a = log(a);
    const Scalar log_b = log(b);
    log_sum_a_.add(p * log_a);
    log_sum_b_.add(p * log_b);
    ratio_sum_ += a / b;
    log_ratio_sum_ += log_a - log_b;
    ++count_;
  }

  Exponent p() const noexcept { return p_; }
  std::size_t count() const noexcept { return count_; }
  Direction direction() const noexcept {
    return p_.value() > 0 ? Direction::LE : Direction::GE;
  }
  Scalar log_sum_a_p() const { return log_sum_a_.value(); }
  Scalar log_sum_b_p() const { return log_sum_b_.value(); }
  Scalar ratio_sum() const { return ratio_sum_.value(); }

  /// ln of the right-hand side (sum b_k^p) * (sum a_k / b_k)^p.
  Scalar log_right() const {
    using std::log;
    return log_sum_b_p() + Scalar(p_.value()) * log(ratio_sum());
  }

  /// The quotient ||a||_p / ||b||_p of the prefix seen so far.
  Scalar lhs_quotient() const {
    using std::exp;
    require_nonempty();
    const double p = p_.value();
    if (std::abs(p) < kSmallExponent) {
      return exp(log_ratio_sum_.value() / Scalar(count_));
    }
    return exp((log_sum_a_p() - log_sum_b_p()) / Scalar(p));
  }

  /// Checks the oriented power-sum inequality on the current prefix. The
  /// verdict is taken from the oriented log-scale margin divided by |p|,
  /// which equals ln(rhs / lhs) of the quotient form; lhs/rhs/gap are
  /// reported in quotient form so the report lines up with
  /// check_main_inequality.
  InequalityReport<Scalar> prefix_check(double relative_band = kDefaultRelativeBand) const {
    require_nonempty();
    const Scalar left = log_sum_a_p();
    const Scalar right = log_right();
    const Scalar oriented = direction() == Direction::LE ? right - left : left - right;
    const Scalar log_margin = oriented / Scalar(std::abs(p_.value()));

    const Scalar lhs = lhs_quotient();
    const Scalar rhs = ratio_sum();
    return {p_, lhs, rhs, rhs - lhs, classify(log_margin, Scalar(1), count_, relative_band),
            count_};
  }

  /// Both sides' log magnitudes, for watching divergent streams. Only the
  /// p > 0 orientation is meaningful: there the left side diverging forces
  /// the right side to diverge too.
  DivergenceProbe<Scalar> divergence_probe(double relative_band = kDefaultRelativeBand) const {
    using std::abs;
    using std::max;
    if (p_.value() < 0) {
      throw OrientationError("divergence probe needs p > 0, got " + p_.to_string());
    }
    require_nonempty();
    const Scalar left = log_sum_a_p();
    const Scalar right = log_right();
    const Scalar band = Scalar(relative_band) * max(Scalar(1), abs(right));
    return {count_, left, right, left <= right + band};
  }

 private:
  void require_nonempty() const {
    if (count_ == 0) throw StateError("stream accumulator is empty");
  }

  Exponent p_;
  std::size_t count_ = 0;
  LogSumAccumulator<Scalar> log_sum_a_;
  LogSumAccumulator<Scalar> log_sum_b_;
  CompensatedSum<Scalar> ratio_sum_;
  CompensatedSum<Scalar> log_ratio_sum_;
};

}  // namespace holder
