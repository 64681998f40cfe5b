#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tdc {

/// Exact time quantity: a rational number, or one of the two infinities.
///
/// All finite arithmetic is exact. Infinities absorb finite operands; the
/// undefined forms (inf - inf, inf * 0, ...) throw std::domain_error.
class TimeValue {
 public:
  using Rational = boost::rational<std::int64_t>;

  constexpr TimeValue() = default;
  TimeValue(std::int64_t integer) : value_(integer) {}  // NOLINT: implicit by intent
  TimeValue(std::int64_t numerator, std::int64_t denominator)
      : value_(numerator, denominator) {}
  explicit TimeValue(Rational r) : value_(r) {}

  static TimeValue infinity() { return TimeValue(Kind::pos_inf); }
  static TimeValue negative_infinity() { return TimeValue(Kind::neg_inf); }

  /// Accepts "inf", "+inf", "-inf", integers, exact decimals ("12.34")
  /// and fractions ("7/3"). Throws std::invalid_argument otherwise.
  static TimeValue parse(std::string_view text);

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  bool is_integer() const { return is_finite() && value_.denominator() == 1; }
  bool is_positive() const;
  bool is_negative() const;
  bool is_zero() const { return is_finite() && value_.numerator() == 0; }

  /// Precondition: is_finite().
  const Rational& rational() const;

  /// Canonical text: integer, exact decimal when the denominator allows it,
  /// otherwise "n/d"; infinities as "inf" / "-inf".
  std::string to_string() const;
  double to_double() const;

  TimeValue abs() const;
  /// Largest integer not above the value. Precondition: finite.
  std::int64_t floor() const;

  TimeValue operator-() const;
  TimeValue& operator+=(const TimeValue& rhs);
  TimeValue& operator-=(const TimeValue& rhs);
  TimeValue& operator*=(const TimeValue& rhs);
  TimeValue& operator/=(const TimeValue& rhs);

  friend TimeValue operator+(TimeValue lhs, const TimeValue& rhs) { return lhs += rhs; }
  friend TimeValue operator-(TimeValue lhs, const TimeValue& rhs) { return lhs -= rhs; }
  friend TimeValue operator*(TimeValue lhs, const TimeValue& rhs) { return lhs *= rhs; }
  friend TimeValue operator/(TimeValue lhs, const TimeValue& rhs) { return lhs /= rhs; }

  friend bool operator==(const TimeValue& a, const TimeValue& b);
  friend std::strong_ordering operator<=>(const TimeValue& a, const TimeValue& b);

  std::size_t hash() const;

 private:
  enum class Kind : std::uint8_t { finite, pos_inf, neg_inf };
  explicit TimeValue(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const TimeValue& v);

inline TimeValue min(const TimeValue& a, const TimeValue& b) { return b < a ? b : a; }
inline TimeValue max(const TimeValue& a, const TimeValue& b) { return a < b ? b : a; }

}  // namespace tdc

template <>
struct std::hash<tdc::TimeValue> {
  std::size_t operator()(const tdc::TimeValue& v) const noexcept { return v.hash(); }
};
