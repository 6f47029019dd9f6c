#pragma once

#include <cmath>
#include <string>

#include "holder/errors.hpp"

namespace holder {

/// A point on the extended exponent line: -inf, a finite nonzero real, the
/// p -> 0 limit, or +inf.
class Exponent {
 public:
  enum class Tag { NegInf, Finite, Zero, PosInf };

  /// Largest accepted finite magnitude; past this p*ln(x) leaves the
  /// comfortable range of double and callers should use the infinity tags.
  static constexpr double kMaxFinite = 1073741824.0;  // 2^30

  static constexpr Exponent neg_inf() noexcept { return Exponent(Tag::NegInf, 0.0); }
  static constexpr Exponent pos_inf() noexcept { return Exponent(Tag::PosInf, 0.0); }
  static constexpr Exponent zero() noexcept { return Exponent(Tag::Zero, 0.0); }

  /// Strict constructor for the FINITE tag.
  static Exponent finite(double value) {
    if (!std::isfinite(value) || value == 0.0) {
      throw DomainError("finite exponent must be a finite nonzero real, got " +
                        std::to_string(value));
    }
    if (std::abs(value) > kMaxFinite) {
      throw DomainError("finite exponent magnitude exceeds 2^30; use inf/-inf");
    }
    return Exponent(Tag::Finite, value);
  }

  /// Maps any real onto the extended line: 0 -> Zero, +-inf -> the
  /// infinity tags, otherwise Finite. NaN is rejected.
  static Exponent from_real(double value) {
    if (std::isnan(value)) throw DomainError("exponent is NaN");
    if (value == 0.0) return zero();
    if (std::isinf(value)) return value > 0 ? pos_inf() : neg_inf();
    return finite(value);
  }

  /// Parses "inf", "+inf", "-inf", "0" or a decimal/scientific literal.
  static Exponent parse(const std::string& text);

  constexpr Tag tag() const noexcept { return tag_; }
  constexpr bool is_finite() const noexcept { return tag_ == Tag::Finite; }
  constexpr bool is_zero() const noexcept { return tag_ == Tag::Zero; }
  constexpr bool is_infinite() const noexcept {
    return tag_ == Tag::PosInf || tag_ == Tag::NegInf;
  }

  /// Finite value; only meaningful when is_finite().
  constexpr double value() const noexcept { return value_; }

  /// The exponent as a plain double (0 and +-inf for the special tags).
  double as_real() const noexcept {
    switch (tag_) {
      case Tag::NegInf: return -INFINITY;
      case Tag::PosInf: return INFINITY;
      case Tag::Zero: return 0.0;
      case Tag::Finite: break;
    }
    return value_;
  }

  /// "-inf" | "inf" | "0" | shortest round-trip decimal.
  std::string to_string() const;

  friend constexpr bool operator==(const Exponent&, const Exponent&) = default;

 private:
  constexpr Exponent(Tag tag, double value) noexcept : tag_(tag), value_(value) {}

  Tag tag_;
  double value_;
};

}  // namespace holder
