#include "ultra/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "ultra/error.hpp"

namespace ultra {
namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduce(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

[[noreturn]] void parse_fail(std::string_view text, std::size_t offset,
                             const std::string& what) {
  throw InputError("invalid rational \"" + std::string(text) + "\" at offset " +
                   std::to_string(offset) + ": " + what);
}

// Parses a run of decimal digits without leading zeros (unless the run is
// exactly "0" and zero_ok). Returns the offset just past the run.
std::size_t parse_digits(std::string_view text, std::size_t pos, bool zero_ok,
                         std::int64_t& out) {
  std::size_t start = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == start) parse_fail(text, start, "expected a digit");
  if (text[start] == '0' && (pos - start > 1 || !zero_ok)) {
    parse_fail(text, start, "leading zero");
  }
  auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, out);
  if (ec != std::errc()) parse_fail(text, start, "magnitude exceeds 64 bits");
  return pos;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  Wide n = numerator;
  Wide d = denominator;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational Rational::operator+(const Rational& o) const {
  return reduce(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return reduce(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return reduce(Wide(num_) * o.num_, Wide(den_) * o.den_);
}

Rational Rational::operator-() const { return reduce(-Wide(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) parse_fail(text, 0, "empty string");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  std::int64_t num = 0;
  std::size_t num_start = pos;
  pos = parse_digits(text, pos, /*zero_ok=*/true, num);
  if (negative && num == 0) parse_fail(text, 0, "negative zero");
  if (negative) num = -num;
  if (pos == text.size()) return Rational(num);
  if (text[pos] != '/') parse_fail(text, pos, "unexpected character");
  if (num == 0) parse_fail(text, num_start, "zero must be written as \"0\"");
  std::size_t den_start = pos + 1;
  std::int64_t den = 0;
  pos = parse_digits(text, den_start, /*zero_ok=*/false, den);
  if (pos != text.size()) parse_fail(text, pos, "trailing characters");
  if (den == 1) parse_fail(text, den_start, "denominator 1 must be omitted");
  if (std::gcd(num < 0 ? -num : num, den) != 1) {
    parse_fail(text, num_start, "not in lowest terms");
  }
  return Rational(num, den);
}

}  // namespace ultra
