#pragma once

// Trapezoidal floor sums
//
//   T(g, a, b) = floor(g(a))/2 + sum_{a<m<b} floor(g(m)) + floor(g(b))/2,
//
// the lattice-count majorants P and P_bar built from them, and executable
// checkers for the floor-sum inequalities for concave and convex functions.

#include "polya/exactnum.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polya {

struct FloorTerm {
  std::int64_t m;
  std::int64_t floor_value;
};

struct FloorSumReport {
  Rational value;  // always a multiple of 1/2
  std::vector<FloorTerm> terms;
};

/// Recomputes T from the audit terms alone.
Rational recompute(const FloorSumReport& report);

inline std::int64_t floor_value(double v) {
  if (!std::isfinite(v)) throw DomainError("floor of non-finite sample");
  return static_cast<std::int64_t>(std::floor(v));
}
inline std::int64_t floor_value(const Rational& v) { return to_int64(rat_floor(v)); }

template <class S>
concept Sampler = requires(const S& g, std::int64_t m) {
  { floor_value(g(m)) } -> std::same_as<std::int64_t>;
};

/// T(g, a, b) over the integers of [a, b]. Requires a < b.
template <Sampler S>
FloorSumReport tfs(const S& g, std::int64_t a, std::int64_t b) {
  if (a >= b) throw std::invalid_argument("tfs: requires a < b");
  FloorSumReport report;
  report.terms.reserve(static_cast<std::size_t>(b - a + 1));
  std::int64_t twice = 0;
  for (std::int64_t m = a; m <= b; ++m) {
    const std::int64_t f = floor_value(g(m));
    report.terms.push_back({m, f});
    twice += (m == a || m == b) ? f : 2 * f;
  }
  report.value = Rational(Integer(static_cast<long>(twice)), Integer(2));
  return report;
}

/// P(lam, mu) = 2 T(G_lam - F_mu, 0, floor(lam)+1), double precision.
/// Upper-bounds the annulus counting function; not rigorous.
double P(double lambda, double mu);

/// Rational majorant 2 T(upper G_lam - lower F_mu, 0, floor(lam)+1) >= P.
/// `jobs` > 1 spreads the independent columns over worker threads; the
/// result does not depend on it.
Rational P_bar(const Rational& lambda, const Rational& mu, int k = kDefaultPrecision, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Floor-sum inequality checkers.

/// Continuous piecewise-linear function through rational knots (x strictly
/// increasing). Integrals and values are exact.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<Rational> xs, std::vector<Rational> ys);

  Rational operator()(const Rational& x) const;
  Rational operator()(std::int64_t m) const { return (*this)(Rational(static_cast<long>(m))); }
  Rational integral(const Rational& a, const Rational& b) const;

  bool concave_on(const Rational& a, const Rational& b) const;
  bool convex_on(const Rational& a, const Rational& b) const;
  bool nonincreasing_on(const Rational& a, const Rational& b) const;
  bool constant_on(const Rational& a, const Rational& b) const;
  bool nonnegative_on(const Rational& a, const Rational& b) const;
  /// max |slope| over pieces meeting (a, b)
  Rational lipschitz_on(const Rational& a, const Rational& b) const;

  const std::vector<Rational>& xs() const { return xs_; }
  const std::vector<Rational>& ys() const { return ys_; }

 private:
  std::vector<Rational> slopes_on(const Rational& a, const Rational& b) const;

  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// Smooth function given in closed form; integrals by adaptive quadrature
/// (relative tolerance 1e-9), shape hypotheses by finite differences.
struct ClosedForm {
  std::function<double(double)> f;
  std::string name;
};

struct Verdict {
  enum class Outcome { Holds, Violated, Rejected };
  Outcome outcome = Outcome::Rejected;
  double margin = 0;  // right-hand side minus left-hand side
  std::string detail;

  bool holds() const { return outcome == Outcome::Holds; }
  bool violated() const { return outcome == Outcome::Violated; }
  bool rejected() const { return outcome == Outcome::Rejected; }
};

/// T(g, a, b) <= int_a^b g for concave g.
Verdict check_concave(const PiecewiseLinear& g, std::int64_t a, std::int64_t b);
Verdict check_concave(const ClosedForm& g, std::int64_t a, std::int64_t b);

/// T(g, a, b) <= int g - (1-c)(b-a)/2 for decreasing concave Lip_c g
/// (0 < c < 1) whose floor drops between a and a+1.
Verdict check_t25(const PiecewiseLinear& g, std::int64_t a, std::int64_t b, const Rational& c);
Verdict check_t25(const ClosedForm& g, std::int64_t a, std::int64_t b, double c);

/// Split-point form: floor g(alpha) = floor g(p) > floor g(p+1) gives
/// T(g, alpha, beta) <= int g - (1-c)(beta-p)/2.
Verdict check_t13(const PiecewiseLinear& g, std::int64_t alpha, std::int64_t beta, std::int64_t p,
                  const Rational& c);

/// T(g + 1/4, a, b) <= int g for non-negative decreasing convex Lip_{1/2} g
/// with integer g(b); equality only for constant g.
Verdict check_convex(const PiecewiseLinear& g, std::int64_t a, std::int64_t b);
Verdict check_convex(const ClosedForm& g, std::int64_t a, std::int64_t b);

/// T(g + 1/4, a, b) <= int g - floor(g(t))/4 for decreasing convex Lip_{1/2}
/// g with g(b) = 0 that is Lip_{1/3} on [t, b].
Verdict check_convex_improved(const PiecewiseLinear& g, std::int64_t a, std::int64_t b, const Rational& t);
Verdict check_convex_improved(const ClosedForm& g, std::int64_t a, std::int64_t b, double t);

}  // namespace polya
