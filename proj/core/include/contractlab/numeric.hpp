#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace contractlab {

// Exact mode uses 128-bit checked integers: overflow throws instead of wrapping.
using BigInt = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<BigInt>;

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

// Absolute tolerance used for every comparison in real (floating point) mode.
inline constexpr double kRealTolerance = 1e-9;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double x);
// Shortest decimal round-trip of x converted exactly, so 0.3 becomes 3/10.
Rational rational_from_decimal(double x);

namespace num {

template <Scalar T>
T from_ratio(std::int64_t p, std::int64_t q) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(p) / static_cast<double>(q);
  } else {
    return Rational(BigInt(p), BigInt(q));
  }
}

template <Scalar T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return to_double(q);
  } else {
    return q;
  }
}

template <Scalar T>
double as_double(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return to_double(x);
  }
}

template <Scalar T>
constexpr bool is_exact() {
  return std::is_same_v<T, Rational>;
}

template <Scalar T>
bool eq(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    return std::fabs(a - b) <= kRealTolerance;
  } else {
    return a == b;
  }
}

// Strictly greater beyond tolerance.
template <Scalar T>
bool gt(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    return a > b + kRealTolerance;
  } else {
    return a > b;
  }
}

template <Scalar T>
bool lt(const T& a, const T& b) {
  return gt(b, a);
}

template <Scalar T>
bool ge(const T& a, const T& b) {
  return !lt(a, b);
}

template <Scalar T>
bool le(const T& a, const T& b) {
  return !gt(a, b);
}

template <Scalar T>
bool is_zero(const T& a) {
  return eq(a, T(0));
}

}  // namespace num

// A scalar extended with +/- infinity. Payments c_i / 0 and the objective of a
// set containing such an agent are not representable in Rational otherwise.
template <Scalar T>
class Extended {
 public:
  enum class Kind : std::uint8_t { minus_infinity, finite, plus_infinity };

  Extended() : kind_(Kind::finite), value_(0) {}
  Extended(T value) : kind_(Kind::finite), value_(std::move(value)) {}  // NOLINT(implicit)

  static Extended plus_infinity() { return Extended(Kind::plus_infinity); }
  static Extended minus_infinity() { return Extended(Kind::minus_infinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_plus_infinity() const { return kind_ == Kind::plus_infinity; }
  bool is_minus_infinity() const { return kind_ == Kind::minus_infinity; }
  // Only meaningful when finite.
  const T& value() const { return value_; }

  double as_double() const {
    switch (kind_) {
      case Kind::minus_infinity: return -INFINITY;
      case Kind::plus_infinity: return INFINITY;
      default: return num::as_double(value_);
    }
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  // Exact ordering; real-mode argmax code uses num::gt on finite values instead.
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.is_finite() && a.value_ < b.value_;
  }

 private:
  explicit Extended(Kind k) : kind_(k), value_(0) {}

  Kind kind_;
  T value_;
};

// Tolerance-aware strict comparison for argmax scans.
template <Scalar T>
bool definitely_greater(const Extended<T>& a, const Extended<T>& b) {
  if (a.kind() != b.kind()) return a.kind() > b.kind();
  if (!a.is_finite()) return false;
  return num::gt(a.value(), b.value());
}

template <Scalar T>
bool approx_equal(const Extended<T>& a, const Extended<T>& b) {
  if (a.kind() != b.kind()) return false;
  return !a.is_finite() || num::eq(a.value(), b.value());
}

}  // namespace contractlab
