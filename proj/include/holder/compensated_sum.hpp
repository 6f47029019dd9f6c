#pragma once

#include <cmath>

namespace holder {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar initial) : sum_(initial) {}

  CompensatedSum& operator+=(Scalar value) {
    using std::abs;
    const Scalar t = sum_ + value;
    if (abs(sum_) >= abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  /// Multiplies the represented value by `factor`. Used when a running
  /// log-domain shift moves and the partial sum must be rescaled.
  CompensatedSum& operator*=(Scalar factor) {
    sum_ *= factor;
    compensation_ *= factor;
    return *this;
  }

  Scalar value() const { return sum_ + compensation_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

/// Compensated sum over any range of values convertible to Scalar.
template <typename Scalar, typename Range>
Scalar compensated_sum(const Range& values) {
  CompensatedSum<Scalar> acc;
  for (const auto& v : values) acc += static_cast<Scalar>(v);
  return acc.value();
}

}  // namespace holder
