#include "tdc/time_value.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace tdc {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("invalid time value '" + std::string(whole) + "'");
  }
  return out;
}

std::int64_t pow10(int k) {
  std::int64_t r = 1;
  while (k-- > 0) r *= 10;
  return r;
}

}  // namespace

TimeValue TimeValue::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return infinity();
  if (text == "-inf") return negative_infinity();
  if (text.empty()) throw std::invalid_argument("empty time value");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), whole);
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    return TimeValue(num, den);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("invalid time value '" + std::string(whole) + "'");
  }
  while (frac_part.size() > 1 && frac_part.back() == '0') frac_part.remove_suffix(1);
  if (frac_part.size() > 17) {
    throw std::invalid_argument("too many decimals in '" + std::string(whole) + "'");
  }
  for (char c : int_part) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid time value '" + std::string(whole) + "'");
  }
  for (char c : frac_part) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid time value '" + std::string(whole) + "'");
  }
  const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
  const std::int64_t scale = pow10(static_cast<int>(frac_part.size()));
  const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
  Rational r(ip * scale + fp, scale);
  return TimeValue(negative ? -r : r);
}

bool TimeValue::is_positive() const {
  return kind_ == Kind::pos_inf || (kind_ == Kind::finite && value_.numerator() > 0);
}

bool TimeValue::is_negative() const {
  return kind_ == Kind::neg_inf || (kind_ == Kind::finite && value_.numerator() < 0);
}

const TimeValue::Rational& TimeValue::rational() const {
  if (!is_finite()) throw std::domain_error("rational() on infinite time value");
  return value_;
}

std::string TimeValue::to_string() const {
  if (kind_ == Kind::pos_inf) return "inf";
  if (kind_ == Kind::neg_inf) return "-inf";
  const std::int64_t num = value_.numerator();
  const std::int64_t den = value_.denominator();
  if (den == 1) return std::to_string(num);

  // Exact decimal when den = 2^a * 5^b.
  std::int64_t rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  const int digits = std::max(twos, fives);
  if (rest == 1 && digits <= 17) {
    const std::int64_t scale = pow10(digits);
    const std::int64_t scaled = num * (scale / den);
    const std::int64_t mag = scaled < 0 ? -scaled : scaled;
    std::string frac = std::to_string(mag % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return (scaled < 0 ? "-" : "") + std::to_string(mag / scale) + "." + frac;
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

double TimeValue::to_double() const {
  if (kind_ == Kind::pos_inf) return HUGE_VAL;
  if (kind_ == Kind::neg_inf) return -HUGE_VAL;
  return static_cast<double>(value_.numerator()) / static_cast<double>(value_.denominator());
}

TimeValue TimeValue::abs() const {
  if (kind_ == Kind::neg_inf) return infinity();
  if (kind_ == Kind::pos_inf) return *this;
  return TimeValue(value_.numerator() < 0 ? -value_ : value_);
}

std::int64_t TimeValue::floor() const {
  const Rational& r = rational();
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

TimeValue TimeValue::operator-() const {
  switch (kind_) {
    case Kind::pos_inf: return negative_infinity();
    case Kind::neg_inf: return infinity();
    case Kind::finite: break;
  }
  return TimeValue(-value_);
}

TimeValue& TimeValue::operator+=(const TimeValue& rhs) {
  if (is_finite() && rhs.is_finite()) {
    value_ += rhs.value_;
    return *this;
  }
  if (!is_finite() && !rhs.is_finite() && kind_ != rhs.kind_) {
    throw std::domain_error("inf + -inf is undefined");
  }
  if (is_finite()) kind_ = rhs.kind_;
  value_ = 0;
  return *this;
}

TimeValue& TimeValue::operator-=(const TimeValue& rhs) { return *this += -rhs; }

TimeValue& TimeValue::operator*=(const TimeValue& rhs) {
  if (is_finite() && rhs.is_finite()) {
    value_ *= rhs.value_;
    return *this;
  }
  if (is_zero() || rhs.is_zero()) throw std::domain_error("inf * 0 is undefined");
  const bool negative = is_negative() != rhs.is_negative();
  kind_ = negative ? Kind::neg_inf : Kind::pos_inf;
  value_ = 0;
  return *this;
}

TimeValue& TimeValue::operator/=(const TimeValue& rhs) {
  if (!rhs.is_finite()) {
    if (!is_finite()) throw std::domain_error("inf / inf is undefined");
    *this = TimeValue(0);
    return *this;
  }
  if (rhs.is_zero()) throw std::domain_error("division by zero time value");
  if (is_finite()) {
    value_ /= rhs.value_;
  } else if (rhs.value_.numerator() < 0) {
    kind_ = kind_ == Kind::pos_inf ? Kind::neg_inf : Kind::pos_inf;
  }
  return *this;
}

bool operator==(const TimeValue& a, const TimeValue& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const TimeValue& a, const TimeValue& b) {
  auto rank = [](const TimeValue& v) {
    return v.is_neg_inf() ? 0 : (v.is_finite() ? 1 : 2);
  };
  if (rank(a) != rank(b)) return rank(a) <=> rank(b);
  if (!a.is_finite()) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t TimeValue::hash() const {
  std::size_t h = std::hash<int>{}(static_cast<int>(kind_));
  if (is_finite()) {
    h ^= std::hash<std::int64_t>{}(value_.numerator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(value_.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const TimeValue& v) { return os << v.to_string(); }

}  // namespace tdc
