#include "polya/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <string>

namespace polya {

namespace {

// 60 decimals of pi, truncated. Requests are capped at kPiStoredDigits; the
// spare digits let pi_bounds round two places finer than asked.
const char* const kPiDigits = "3141592653589793238462643383279502884197169399375105820974944";
constexpr int kPiTableDigits = 60;

const Integer& pi_scaled_floor() {
  static const Integer v(kPiDigits, 10);
  return v;
}

Integer ipow10(int k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// Bits of binary fixed point giving at least `digits` decimals plus slack.
unsigned long bits_for_digits(int digits) {
  return static_cast<unsigned long>(std::ceil((digits + 2) * 3.3219280948873623)) + 8;
}

// arcsin series sum_{n>=0} c_n x^{2n+1}, all c_n > 0. Each step rescales the
// previous term by x^2 (2n+1)^2 / ((2n+2)(2n+3)), which is < x^2.
// Lower: x rounded down, every product rounded down, series truncated.
// Upper: x rounded up, every product rounded up, tail bounded geometrically.
// Results are scaled by 2^bits. Requires 0 <= x <= 3/4.
Integer arcsin_scaled(const Rational& x, unsigned long bits, bool upper) {
  const Integer one = Integer(1) << bits;
  const Integer scaled_num = x.num() << bits;
  const Integer xs = upper ? ceil_div(scaled_num, x.den()) : floor_div(scaled_num, x.den());
  if (xs == 0) return Integer(0);
  const Integer x2 = upper ? ceil_div(xs * xs, one) : floor_div(xs * xs, one);

  Integer term = xs;
  Integer sum = 0;
  for (unsigned long n = 0;; ++n) {
    if (upper && term <= 2) {
      // remainder <= term * (1 + x^2 + x^4 + ...) = term / (1 - x^2)
      sum += ceil_div(term * one, one - x2);
      return sum;
    }
    if (!upper && term == 0) return sum;
    sum += term;
    const unsigned long odd = 2 * n + 1;
    const Integer num = term * x2 * odd * odd;
    const Integer den = (Integer((2 * n + 2) * (2 * n + 3))) << bits;
    term = upper ? ceil_div(num, den) : floor_div(num, den);
  }
}

BoundPair arcsin_bounds(const Rational& lo_arg, const Rational& hi_arg, int digits) {
  const unsigned long bits = bits_for_digits(digits);
  const Integer one = Integer(1) << bits;
  Rational lo(arcsin_scaled(lo_arg, bits, false), one);
  Rational hi(arcsin_scaled(hi_arg, bits, true), one);
  return {std::move(lo), std::move(hi)};
}

constexpr int kEscalation[] = {4, 8, 16, 32, kPiStoredDigits};

void check_precision(int k) {
  if (k < 1) throw PrecisionError("precision must be at least 1 digit, got " + std::to_string(k));
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  q_.canonicalize();
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite double has no rational value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num_text = text.substr(0, slash);
    const auto den_text = text.substr(slash + 1);
    Integer num, den;
    if (num.set_str(std::string(num_text), 10) != 0 || den.set_str(std::string(den_text), 10) != 0)
      return fail();
    if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+') return fail();
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int decimals = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++decimals;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  Integer num(digits, 10);
  if (negative) num = -num;
  return Rational(num, ipow10(decimals));
}

Integer rat_floor(const Rational& q) { return floor_div(q.num(), q.den()); }

Integer rat_ceil(const Rational& q) { return ceil_div(q.num(), q.den()); }

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  return n.get_si();
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow10(int k) {
  return k >= 0 ? Rational(ipow10(k)) : Rational(Integer(1), ipow10(-k));
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);

  // Continued-fraction descent on 0 < lo <= hi.
  const Integer c = rat_ceil(lo);
  if (Rational(c) <= hi) return Rational(c);
  const Integer f = rat_floor(lo);
  const Rational shift(f);
  const Rational inner = simplest_between(Rational(1) / (hi - shift), Rational(1) / (lo - shift));
  return shift + Rational(1) / inner;
}

BoundPair::BoundPair(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::logic_error("BoundPair with lo > hi: " + lo_.to_string() + " > " + hi_.to_string());
}

std::ostream& operator<<(std::ostream& os, const BoundPair& b) {
  return os << "[" << b.lo() << ", " << b.hi() << "]";
}

BoundPair pi_bounds(int k) {
  check_precision(k);
  if (k > kPiStoredDigits) {
    throw PrecisionError("pi requested to " + std::to_string(k) + " digits; only " +
                         std::to_string(kPiStoredDigits) + " are supported");
  }
  // Truncating the truncated table to d digits gives floor(pi 10^d).
  const int d = k + 2;
  const Integer lo_num = floor_div(pi_scaled_floor(), ipow10(kPiTableDigits - d));
  const Integer den = ipow10(d);
  return {Rational(lo_num, den), Rational(lo_num + 1, den)};
}

BoundPair sqrt_bounds(const Rational& q, int k) {
  check_precision(k);
  if (q.sign() < 0) throw DomainError("sqrt of negative rational " + q.to_string());
  if (is_perfect_square(q.num()) && is_perfect_square(q.den())) {
    const Rational r(isqrt(q.num()), isqrt(q.den()));
    return BoundPair::exact(r);
  }
  const Integer scale = ipow10(k);
  const Integer root = isqrt(floor_div(q.num() * scale * scale, q.den()));
  Rational lo(root, scale);
  Rational hi(root + 1, scale);
  if (lo * lo > q || hi * hi < q) throw std::logic_error("sqrt_bounds postcondition failed for " + q.to_string());
  return {std::move(lo), std::move(hi)};
}

BoundPair arccos_bounds(const Rational& q, int k) {
  check_precision(k);
  if (q.sign() < 0 || q > Rational(1)) throw DomainError("arccos argument outside [0,1]: " + q.to_string());
  if (q == Rational(1)) return BoundPair::exact(Rational(0));
  if (q.is_zero()) {
    const BoundPair pi = pi_bounds(k);
    return {pi.lo() / Rational(2), pi.hi() / Rational(2)};
  }
  const int inner = k + 2;
  if (inner > kPiStoredDigits) {
    throw PrecisionError("arccos requested to " + std::to_string(k) + " digits exceeds stored pi precision");
  }

  if (q * q <= Rational(1, 2)) {
    // arccos q = pi/2 - arcsin q
    const BoundPair pi = pi_bounds(inner);
    const BoundPair as = arcsin_bounds(q, q, inner);
    BoundPair r(pi.lo() / Rational(2) - as.hi(), pi.hi() / Rational(2) - as.lo());
    return round_outward(r, k + 1);
  }
  // arccos q = 2 arcsin sqrt((1-q)/2), argument at most sin(pi/8) < 0.39
  const BoundPair s = sqrt_bounds((Rational(1) - q) / Rational(2), inner);
  const BoundPair as = arcsin_bounds(s.lo(), s.hi(), inner);
  BoundPair r(Rational(2) * as.lo(), Rational(2) * as.hi());
  return round_outward(r, k + 1);
}

int compare_with_pi(const Rational& q) {
  for (const int k : kEscalation) {
    const BoundPair pi = pi_bounds(k);
    if (q < pi.lo()) return -1;
    if (q > pi.hi()) return 1;
  }
  throw PrecisionError("cannot separate " + q.to_string() + " from pi with stored digits");
}

int compare_with_pi_squared(const Rational& q) {
  for (const int k : kEscalation) {
    const BoundPair pi = pi_bounds(k);
    if (q < pi.lo() * pi.lo()) return -1;
    if (q > pi.hi() * pi.hi()) return 1;
  }
  throw PrecisionError("cannot separate " + q.to_string() + " from pi^2 with stored digits");
}

BoundPair round_outward(const BoundPair& b, int digits) {
  const Integer scale = ipow10(digits);
  const Rational s(scale);
  return {Rational(rat_floor(b.lo() * s), scale), Rational(rat_ceil(b.hi() * s), scale)};
}

BoundPair operator+(const BoundPair& a, const BoundPair& b) { return {a.lo() + b.lo(), a.hi() + b.hi()}; }

BoundPair operator-(const BoundPair& a, const BoundPair& b) { return {a.lo() - b.hi(), a.hi() - b.lo()}; }

BoundPair operator*(const BoundPair& a, const BoundPair& b) {
  const Rational p1 = a.lo() * b.lo();
  const Rational p2 = a.lo() * b.hi();
  const Rational p3 = a.hi() * b.lo();
  const Rational p4 = a.hi() * b.hi();
  return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

BoundPair operator/(const BoundPair& a, const BoundPair& b) {
  if (b.lo().sign() <= 0 && b.hi().sign() >= 0) throw DomainError("interval division by an enclosure of zero");
  return a * BoundPair(Rational(1) / b.hi(), Rational(1) / b.lo());
}

BoundPair sqrt_bounds(const BoundPair& x, int k) {
  if (x.lo().sign() < 0) throw DomainError("sqrt of enclosure reaching below zero");
  return {sqrt_bounds(x.lo(), k).lo(), sqrt_bounds(x.hi(), k).hi()};
}

}  // namespace polya
