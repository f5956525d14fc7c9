#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ultra {

/// Exact rational with checked 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Any operation
/// whose exact result does not fit throws OverflowError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Canonical text form: "p/q", or "p" when q = 1.
  std::string to_string() const;

  /// Parses the canonical text form only. "2/4", "04", "3/1", "+1" and "-0"
  /// are rejected; the message carries the offending character offset.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ultra

template <>
struct std::hash<ultra::Rational> {
  std::size_t operator()(const ultra::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.numerator()) * 31u ^
           std::hash<std::int64_t>{}(r.denominator());
  }
};
