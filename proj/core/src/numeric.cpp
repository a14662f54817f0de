#include "contractlab/numeric.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "contractlab/errors.hpp"

namespace contractlab {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("empty integer in rational literal '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("invalid character in rational literal '" + std::string(whole) + "'");
    }
  }
  try {
    return BigInt(std::string(digits));
  } catch (const std::overflow_error&) {
    throw ParseError("rational literal out of range: '" + std::string(whole) + "'");
  }
}

BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Parses [-]digits[.digits][e[+-]digits] exactly.
Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    text = text.substr(0, e);
    int sign = 1;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      sign = exp_text.front() == '-' ? -1 : 1;
      exp_text.remove_prefix(1);
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), value);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
      throw ParseError("invalid exponent in '" + std::string(whole) + "'");
    }
    exponent = sign * value;
  }
  std::string digits;
  int frac_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<int>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty()) throw ParseError("invalid number '" + std::string(whole) + "'");
  BigInt mantissa = parse_integer(digits, whole);
  const int scale = exponent - frac_digits;
  if (scale > 30 || scale < -30) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
  Rational r = scale >= 0 ? Rational(mantissa * pow10(scale)) : Rational(mantissa, pow10(-scale));
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, whole);

  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  const BigInt p = parse_integer(num, whole);
  const BigInt q = parse_integer(den, whole);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
  Rational r(p, q);
  return negative ? -r : r;
}

std::string to_string(const Rational& q) {
  return q.numerator().str() + "/" + q.denominator().str();
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot convert a non-finite double to a rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  // 53 bits of mantissa as an integer.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt p(scaled);
  BigInt q(1);
  if (exp > 0) {
    if (exp > 70) throw InvalidArgument("double too large for exact rational conversion");
    p <<= exp;
  } else if (exp < 0) {
    if (-exp > 120) throw InvalidArgument("double too small for exact rational conversion");
    q <<= -exp;
  }
  return Rational(p, q);
}

Rational rational_from_decimal(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot convert a non-finite double to a rational");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw InvalidArgument("failed to format double");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

}  // namespace contractlab
