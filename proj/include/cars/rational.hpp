#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <type_traits>

namespace cars {

/// Exact ratio of 64-bit integers, always reduced with a positive denominator.
/// Arithmetic throws std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  constexpr Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  explicit constexpr operator double() const { return to_double(); }

  constexpr Rational operator-() const { return {checked_mul(num_, -1), den_}; }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t l = checked_mul(a.den_ / g, b.den_);
    return {checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l};
  }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const std::int64_t n = checked_mul(g1 ? a.num_ / g1 : 0, g2 ? b.num_ / g2 : 0);
    const std::int64_t d = checked_mul(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1));
    return {n, d};
  }
  friend constexpr Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }

  constexpr Rational& operator+=(const Rational& o) { return *this = *this + o; }
  constexpr Rational& operator-=(const Rational& o) { return *this = *this - o; }
  constexpr Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // denominators are positive, so cross multiplication preserves order
    return checked_mul(a.num_, b.den_) <=> checked_mul(b.num_, a.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  static constexpr std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Rational: overflow");
    return out;
  }
  static constexpr std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Rational: overflow");
    return out;
  }
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = checked_mul(num_, -1);
      den_ = checked_mul(den_, -1);
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Converts a coefficient to the evaluation scalar type.
template <typename T>
constexpr T coefficient_as(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else {
    return static_cast<T>(r.to_double());
  }
}

}  // namespace cars
