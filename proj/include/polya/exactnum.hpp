#pragma once

// Exact rational arithmetic and directed-rounding enclosures of pi, square
// roots and arccos. Every enclosure is a pair of rationals that provably
// brackets the real value; nothing here touches floating point except the
// explicit conversions at the bottom.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polya {

using Integer = mpz_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an enclosure cannot be produced at the requested precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision fraction, always kept in canonical form
/// (positive denominator, coprime numerator and denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(static_cast<long>(n)) {}  // NOLINT
  explicit Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double x);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }
  /// Canonical "numerator/denominator" form, e.g. "5/2", "150/1", "-1/3".
  std::string to_string() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Parses "p/q", an integer, or a plain decimal ("2.5" is read as 5/2 exactly).
Rational parse_rational(std::string_view text);

Integer rat_floor(const Rational& q);
Integer rat_ceil(const Rational& q);
std::int64_t to_int64(const Integer& n);

Rational abs(const Rational& q);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);
Rational pow10(int k);

/// Simplest rational (smallest denominator, then smallest numerator) in the
/// closed interval [lo, hi]. Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Enclosure lo <= x <= hi of an unknown real x.
class BoundPair {
 public:
  BoundPair(Rational lo, Rational hi);
  static BoundPair exact(const Rational& x) { return {x, x}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  /// True when the whole enclosure lies inside [a, b].
  bool within(const BoundPair& other) const { return other.lo_ <= lo_ && hi_ <= other.hi_; }

 private:
  Rational lo_;
  Rational hi_;
};

std::ostream& operator<<(std::ostream& os, const BoundPair& b);

/// Number of decimals of pi held in the built-in table.
inline constexpr int kPiStoredDigits = 50;
/// Precision used by the certification sweep unless configured otherwise.
inline constexpr int kDefaultPrecision = 12;

/// pi to within 10^-k, 1 <= k <= kPiStoredDigits.
BoundPair pi_bounds(int k);

/// sqrt(q) to within 10^-k; exact when q is the square of a rational.
BoundPair sqrt_bounds(const Rational& q, int k);

/// arccos(q) in radians to within 10^-k, for 0 <= q <= 1.
BoundPair arccos_bounds(const Rational& q, int k);

/// Sign of q - pi (never zero). Throws PrecisionError if the stored digits
/// cannot separate q from pi.
int compare_with_pi(const Rational& q);
/// Sign of q - pi^2, same contract as compare_with_pi.
int compare_with_pi_squared(const Rational& q);

/// Widens an enclosure outward onto the decimal grid 10^-digits.
BoundPair round_outward(const BoundPair& b, int digits);

// Interval helpers used by the constant checks. Only what those need.
BoundPair operator+(const BoundPair& a, const BoundPair& b);
BoundPair operator-(const BoundPair& a, const BoundPair& b);
BoundPair operator*(const BoundPair& a, const BoundPair& b);
BoundPair operator/(const BoundPair& a, const BoundPair& b);
BoundPair sqrt_bounds(const BoundPair& x, int k);

}  // namespace polya
