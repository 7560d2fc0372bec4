#include "polya/floorsum.hpp"

#include "polya/boundfns.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace polya {

Rational recompute(const FloorSumReport& report) {
  if (report.terms.size() < 2) throw std::invalid_argument("recompute: need at least two terms");
  long twice = 0;
  for (std::size_t i = 0; i < report.terms.size(); ++i) {
    const long f = static_cast<long>(report.terms[i].floor_value);
    twice += (i == 0 || i + 1 == report.terms.size()) ? f : 2 * f;
  }
  return Rational(Integer(twice), Integer(2));
}

double P(double lambda, double mu) {
  if (!(0 <= mu && mu < lambda)) throw DomainError("P: requires 0 <= mu < lambda");
  const auto b = static_cast<std::int64_t>(std::floor(lambda)) + 1;
  auto g = [&](std::int64_t m) {
    const double z = static_cast<double>(m);
    return G(lambda, z) - F(mu, z);
  };
  return 2 * tfs(g, 0, b).value.to_double();
}

Rational P_bar(const Rational& lambda, const Rational& mu, int k, unsigned jobs) {
  if (!(mu.sign() >= 0 && mu < lambda)) throw DomainError("P_bar: requires 0 <= mu < lambda");
  const std::int64_t b = to_int64(rat_floor(lambda)) + 1;
  const auto column = [&](std::int64_t m) -> std::int64_t {
    const Rational z(static_cast<long>(m));
    return floor_value(G(lambda, z, Verified::upper(k)) - F(mu, z, Verified::lower(k)));
  };

  std::vector<std::int64_t> floors(static_cast<std::size_t>(b + 1));
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(b + 1)));
  if (jobs == 1) {
    for (std::int64_t m = 0; m <= b; ++m) floors[m] = column(m);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::int64_t m = t; m <= b; m += jobs) floors[m] = column(m);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // 2T = floor(g(0)) + 2 sum + floor(g(b)), an integer.
  long total = 0;
  for (std::int64_t m = 0; m <= b; ++m) total += (m == 0 || m == b) ? floors[m] : 2 * floors[m];
  return Rational(total);
}

// ---------------------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw std::invalid_argument("PiecewiseLinear: need matching knot lists of length >= 2");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i])) throw std::invalid_argument("PiecewiseLinear: knots must increase strictly");
}

Rational PiecewiseLinear::operator()(const Rational& x) const {
  if (x < xs_.front() || x > xs_.back()) throw DomainError("PiecewiseLinear: outside the knot range");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end()) return ys_.back();
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const Rational t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

Rational PiecewiseLinear::integral(const Rational& a, const Rational& b) const {
  if (b < a) return -integral(b, a);
  (void)(*this)(a);
  (void)(*this)(b);
  Rational total(0);
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const Rational& lo = max(a, xs_[i]);
    const Rational& hi = min(b, xs_[i + 1]);
    if (!(lo < hi)) continue;
    total += (hi - lo) * ((*this)(lo) + (*this)(hi)) / Rational(2);
  }
  return total;
}

std::vector<Rational> PiecewiseLinear::slopes_on(const Rational& a, const Rational& b) const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    if (xs_[i] < b && xs_[i + 1] > a) out.push_back((ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
  return out;
}

bool PiecewiseLinear::concave_on(const Rational& a, const Rational& b) const {
  const auto s = slopes_on(a, b);
  return std::is_sorted(s.begin(), s.end(), [](const Rational& x, const Rational& y) { return x > y; });
}

bool PiecewiseLinear::convex_on(const Rational& a, const Rational& b) const {
  const auto s = slopes_on(a, b);
  return std::is_sorted(s.begin(), s.end());
}

bool PiecewiseLinear::nonincreasing_on(const Rational& a, const Rational& b) const {
  const auto s = slopes_on(a, b);
  return std::all_of(s.begin(), s.end(), [](const Rational& x) { return x.sign() <= 0; });
}

bool PiecewiseLinear::constant_on(const Rational& a, const Rational& b) const {
  const auto s = slopes_on(a, b);
  return std::all_of(s.begin(), s.end(), [](const Rational& x) { return x.is_zero(); });
}

bool PiecewiseLinear::nonnegative_on(const Rational& a, const Rational& b) const {
  if ((*this)(a).sign() < 0 || (*this)(b).sign() < 0) return false;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (a < xs_[i] && xs_[i] < b && ys_[i].sign() < 0) return false;
  return true;
}

Rational PiecewiseLinear::lipschitz_on(const Rational& a, const Rational& b) const {
  Rational best(0);
  for (const auto& s : slopes_on(a, b)) best = max(best, abs(s));
  return best;
}

// ---------------------------------------------------------------------------
// The checkers are written once against a small "view" interface. The exact
// view decides everything in rational arithmetic; the closed-form view uses
// quadrature and finite differences with explicit tolerances.

namespace {

struct ExactView {
  using Num = Rational;
  const PiecewiseLinear& g;

  Num at(std::int64_t m) const { return g(m); }
  Num at(const Num& x) const { return g(x); }
  Num integral(std::int64_t a, std::int64_t b) const { return g.integral(Num(static_cast<long>(a)), Num(static_cast<long>(b))); }
  bool covers(std::int64_t a, std::int64_t b) const {
    return g.xs().front() <= Num(static_cast<long>(a)) && Num(static_cast<long>(b)) <= g.xs().back();
  }
  bool concave(const Num& a, const Num& b) const { return g.concave_on(a, b); }
  bool convex(const Num& a, const Num& b) const { return g.convex_on(a, b); }
  bool decreasing(const Num& a, const Num& b) const { return g.nonincreasing_on(a, b); }
  bool nonnegative(const Num& a, const Num& b) const { return g.nonnegative_on(a, b); }
  bool constant(const Num& a, const Num& b) const { return g.constant_on(a, b); }
  bool lipschitz(const Num& c, const Num& a, const Num& b) const { return g.lipschitz_on(a, b) <= c; }
  bool is_integer(const Num& v) const { return v.is_integer(); }
  bool nonneg_margin(const Num& m) const { return m.sign() >= 0; }
  bool zero_margin(const Num& m) const { return m.is_zero(); }
  static Num num(std::int64_t m) { return Num(static_cast<long>(m)); }
  static Num half(const Num& x) { return x / Num(2); }
  static double to_double(const Num& x) { return x.to_double(); }
};

struct ClosedView {
  using Num = double;
  const ClosedForm& g;

  static constexpr int kSamplesPerUnit = 256;
  static constexpr double kSnap = 1e-12;

  // Values within kSnap of an integer are treated as that integer so that a
  // rounding error cannot flip a floor at an exact lattice point.
  Num at(double x) const {
    const double v = g.f(x);
    const double r = std::round(v);
    return std::abs(v - r) <= kSnap ? r : v;
  }
  Num at(std::int64_t m) const { return at(static_cast<double>(m)); }
  Num integral(std::int64_t a, std::int64_t b) const {
    double total = 0;
    for (std::int64_t m = a; m < b; ++m) {
      total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          g.f, static_cast<double>(m), static_cast<double>(m + 1), 20, 1e-12);
    }
    return total;
  }
  bool covers(std::int64_t, std::int64_t) const { return true; }

  std::vector<double> grid(double a, double b) const {
    const int n = std::max(8, static_cast<int>(std::ceil((b - a) * kSamplesPerUnit)));
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[i] = g.f(a + (b - a) * i / n);
    return v;
  }
  static double scale(const std::vector<double>& v) {
    double s = 1;
    for (double x : v) s = std::max(s, std::abs(x));
    return s * 1e-10;
  }
  bool second_diff(double a, double b, int sign) const {
    const auto v = grid(a, b);
    const double tol = scale(v);
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
      if (sign * (v[i - 1] - 2 * v[i] + v[i + 1]) < -tol) return false;
    return true;
  }
  bool concave(double a, double b) const { return second_diff(a, b, -1); }
  bool convex(double a, double b) const { return second_diff(a, b, 1); }
  bool decreasing(double a, double b) const {
    const auto v = grid(a, b);
    const double tol = scale(v);
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1] + tol) return false;
    return true;
  }
  bool nonnegative(double a, double b) const {
    const auto v = grid(a, b);
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= -kSnap; });
  }
  bool constant(double a, double b) const {
    const auto v = grid(a, b);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo <= scale(v);
  }
  bool lipschitz(double c, double a, double b) const {
    if (!(a < b)) return true;
    const auto v = grid(a, b);
    const double h = (b - a) / static_cast<double>(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i] - v[i - 1]) > (c + 1e-9) * h) return false;
    return true;
  }
  bool is_integer(double v) const { return std::abs(v - std::round(v)) <= kSnap; }
  bool nonneg_margin(double m) const { return m >= -1e-8; }
  bool zero_margin(double) const { return false; }  // equality is undecidable numerically
  static double num(std::int64_t m) { return static_cast<double>(m); }
  static double half(double x) { return x / 2; }
  static double to_double(double x) { return x; }
};

Verdict reject(std::string why) { return {Verdict::Outcome::Rejected, 0, std::move(why)}; }

template <class View, class Num = typename View::Num>
Verdict decide(const View& v, const Num& margin, std::string what) {
  Verdict out;
  out.margin = View::to_double(margin);
  out.outcome = v.nonneg_margin(margin) ? Verdict::Outcome::Holds : Verdict::Outcome::Violated;
  out.detail = std::move(what);
  return out;
}

template <class View>
Rational floor_sum(const View& v, std::int64_t a, std::int64_t b, bool quarter) {
  using Num = typename View::Num;
  auto sample = [&](std::int64_t m) -> Num {
    Num x = v.at(m);
    if (quarter) x = x + Num(1) / Num(4);
    return x;
  };
  return tfs(sample, a, b).value;
}

template <class Num>
Num from_rational(const Rational& q) {
  if constexpr (std::is_same_v<Num, double>) {
    return q.to_double();
  } else {
    return q;
  }
}

template <class View>
Verdict concave_impl(const View& v, std::int64_t a, std::int64_t b) {
  using Num = typename View::Num;
  if (a >= b) return reject("requires a < b");
  if (!v.covers(a, b)) return reject("function not defined on [a, b]");
  if (!v.concave(View::num(a), View::num(b))) return reject("not concave on [a, b]");
  const Num margin = v.integral(a, b) - from_rational<Num>(floor_sum(v, a, b, false));
  return decide(v, margin, "T(g,a,b) <= integral");
}

template <class View, class Num = typename View::Num>
Verdict t25_impl(const View& v, std::int64_t a, std::int64_t b, const Num& c) {
  if (a >= b) return reject("requires a < b");
  if (!(Num(0) < c && c < Num(1))) return reject("requires 0 < c < 1");
  if (!v.covers(a, b)) return reject("function not defined on [a, b]");
  const Num lo = View::num(a), hi = View::num(b);
  if (!v.decreasing(lo, hi)) return reject("not decreasing");
  if (!v.concave(lo, hi)) return reject("not concave");
  if (!v.lipschitz(c, lo, hi)) return reject("not Lipschitz with the given constant");
  if (!(floor_value(v.at(a)) > floor_value(v.at(a + 1)))) return reject("floor does not drop between a and a+1");
  const Num correction = View::half((Num(1) - c) * View::num(b - a));
  const Num margin = v.integral(a, b) - correction - from_rational<Num>(floor_sum(v, a, b, false));
  return decide(v, margin, "T(g,a,b) <= integral - (1-c)(b-a)/2");
}

template <class View>
Verdict convex_impl(const View& v, std::int64_t a, std::int64_t b) {
  using Num = typename View::Num;
  if (a >= b) return reject("requires a < b");
  if (!v.covers(a, b)) return reject("function not defined on [a, b]");
  const Num lo = View::num(a), hi = View::num(b);
  if (!v.nonnegative(lo, hi)) return reject("not non-negative");
  if (!v.decreasing(lo, hi)) return reject("not decreasing");
  if (!v.convex(lo, hi)) return reject("not convex");
  if (!v.lipschitz(Num(1) / Num(2), lo, hi)) return reject("not 1/2-Lipschitz");
  if (!v.is_integer(v.at(b))) return reject("g(b) is not an integer");
  const Num margin = v.integral(a, b) - from_rational<Num>(floor_sum(v, a, b, true));
  Verdict out = decide(v, margin, "T(g+1/4,a,b) <= integral");
  if (out.holds() && v.zero_margin(margin) && !v.constant(lo, hi)) {
    out.outcome = Verdict::Outcome::Violated;
    out.detail = "equality for a non-constant function";
  }
  return out;
}

template <class View, class Num = typename View::Num>
Verdict convex_improved_impl(const View& v, std::int64_t a, std::int64_t b, const Num& t) {
  if (a >= b) return reject("requires a < b");
  if (!v.covers(a, b)) return reject("function not defined on [a, b]");
  const Num lo = View::num(a), hi = View::num(b);
  if (!(lo <= t && t <= hi)) return reject("t outside [a, b]");
  if (!v.decreasing(lo, hi)) return reject("not decreasing");
  if (!v.convex(lo, hi)) return reject("not convex");
  if (!v.lipschitz(Num(1) / Num(2), lo, hi)) return reject("not 1/2-Lipschitz");
  if (!v.lipschitz(Num(1) / Num(3), t, hi)) return reject("not 1/3-Lipschitz on [t, b]");
  if (!(v.at(b) == Num(0))) return reject("g(b) != 0");
  const Num bonus = Num(floor_value(v.at(t))) / Num(4);
  const Num margin = v.integral(a, b) - bonus - from_rational<Num>(floor_sum(v, a, b, true));
  return decide(v, margin, "T(g+1/4,a,b) <= integral - floor(g(t))/4");
}

}  // namespace

Verdict check_concave(const PiecewiseLinear& g, std::int64_t a, std::int64_t b) {
  return concave_impl(ExactView{g}, a, b);
}
Verdict check_concave(const ClosedForm& g, std::int64_t a, std::int64_t b) {
  return concave_impl(ClosedView{g}, a, b);
}

Verdict check_t25(const PiecewiseLinear& g, std::int64_t a, std::int64_t b, const Rational& c) {
  return t25_impl(ExactView{g}, a, b, c);
}
Verdict check_t25(const ClosedForm& g, std::int64_t a, std::int64_t b, double c) {
  return t25_impl(ClosedView{g}, a, b, c);
}

Verdict check_t13(const PiecewiseLinear& g, std::int64_t alpha, std::int64_t beta, std::int64_t p,
                  const Rational& c) {
  const ExactView v{g};
  if (alpha >= beta) return reject("requires alpha < beta");
  if (!(alpha <= p && p < beta)) return reject("split point outside [alpha, beta)");
  if (!(Rational(0) < c && c < Rational(1))) return reject("requires 0 < c < 1");
  if (!v.covers(alpha, beta)) return reject("function not defined on [alpha, beta]");
  const Rational lo(static_cast<long>(alpha)), hi(static_cast<long>(beta));
  if (!g.nonincreasing_on(lo, hi)) return reject("not decreasing");
  if (!g.concave_on(lo, hi)) return reject("not concave");
  if (!(g.lipschitz_on(lo, hi) <= c)) return reject("not Lipschitz with the given constant");
  const std::int64_t fa = floor_value(g(alpha));
  if (!(fa == floor_value(g(p)) && fa > floor_value(g(p + 1)))) return reject("floor pattern at the split point not met");
  const Rational correction = (Rational(1) - c) * Rational(static_cast<long>(beta - p)) / Rational(2);
  const Rational margin = g.integral(lo, hi) - correction - tfs(g, alpha, beta).value;
  return decide(v, margin, "T(g,alpha,beta) <= integral - (1-c)(beta-p)/2");
}

Verdict check_convex(const PiecewiseLinear& g, std::int64_t a, std::int64_t b) {
  return convex_impl(ExactView{g}, a, b);
}
Verdict check_convex(const ClosedForm& g, std::int64_t a, std::int64_t b) {
  return convex_impl(ClosedView{g}, a, b);
}

Verdict check_convex_improved(const PiecewiseLinear& g, std::int64_t a, std::int64_t b, const Rational& t) {
  return convex_improved_impl(ExactView{g}, a, b, t);
}
Verdict check_convex_improved(const ClosedForm& g, std::int64_t a, std::int64_t b, double t) {
  return convex_improved_impl(ClosedView{g}, a, b, t);
}

}  // namespace polya
