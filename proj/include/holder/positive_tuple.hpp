#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "holder/errors.hpp"

namespace holder {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// A nonempty tuple of strictly positive finite reals. Validated once at
/// construction; immutable afterwards.
template <typename Scalar = double>
class PositiveTuple {
 public:
  using ScalarType = Scalar;

  template <typename Derived>
  explicit PositiveTuple(const Eigen::DenseBase<Derived>& values)
      : values_(values.template cast<Scalar>()) {
    validate();
  }

  PositiveTuple(std::initializer_list<Scalar> values)
      : values_(static_cast<Eigen::Index>(values.size())) {
    Eigen::Index i = 0;
    for (Scalar v : values) values_[i++] = v;
    validate();
  }

  explicit PositiveTuple(std::span<const Scalar> values)
      : values_(Eigen::Map<const ArrayX<Scalar>>(
            values.data(), static_cast<Eigen::Index>(values.size()))) {
    validate();
  }

  const ArrayX<Scalar>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  Scalar operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

  Scalar max() const { return values_.maxCoeff(); }
  Scalar min() const { return values_.minCoeff(); }

 private:
  void validate() const {
    using std::isfinite;
    if (values_.size() == 0) throw DomainError("tuple must be nonempty");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      const Scalar v = values_[i];
      if (!(v > Scalar(0)) || !isfinite(v)) {
        throw DomainError("tuple element " + std::to_string(i) +
                          " is not strictly positive and finite");
      }
    }
  }

  ArrayX<Scalar> values_;
};

/// Two positive tuples of equal length.
template <typename Scalar = double>
class PairedTuples {
 public:
  PairedTuples(PositiveTuple<Scalar> a, PositiveTuple<Scalar> b)
      : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) throw LengthMismatchError(a_.size(), b_.size());
  }

  const PositiveTuple<Scalar>& a() const noexcept { return a_; }
  const PositiveTuple<Scalar>& b() const noexcept { return b_; }
  std::size_t size() const noexcept { return a_.size(); }

 private:
  PositiveTuple<Scalar> a_;
  PositiveTuple<Scalar> b_;
};

template <typename Scalar>
PairedTuples(PositiveTuple<Scalar>, PositiveTuple<Scalar>) -> PairedTuples<Scalar>;

}  // namespace holder
