// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_RATIONAL_HPP
#define PRW_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <string>

namespace prw {

using Int = mpz_class;

/// Exact rational number, always kept reduced with positive denominator.
/// Backed by GMP so denominators like 5^30 stay exact.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den);
  Rational(long num, long den);

  static Rational pow2(long k);  // 2^k, k may be negative

  const Int num() const { return v_.get_num(); }
  const Int den() const { return v_.get_den(); }

  Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
  Rational operator/(const Rational& o) const { return Rational(v_ / o.v_); }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  Rational abs() const { return v_ < 0 ? -*this : *this; }
  int sign() const { return sgn(v_); }
  Int floor() const;
  Int ceil() const;

  /// "3/4", "-2", "7" — denominator omitted when 1.
  std::string str() const;
  static std::optional<Rational> parse(const std::string& text);

private:
  explicit Rational(const mpq_class& q) : v_(q) {}
  mpq_class v_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace prw

#endif
