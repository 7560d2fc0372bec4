#include "polya/suites.hpp"

#include "polya/besseloracle.hpp"
#include "polya/boundfns.hpp"
#include "polya/floorsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace polya {

namespace {

using Rng = std::mt19937_64;

Rational R(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, long den = 60) {
  std::uniform_int_distribution<long> u(0, den);
  return lo + (hi - lo) * R(u(rng), den);
}

// a, b and up to six interior knots.
std::vector<Rational> random_knots(Rng& rng, std::int64_t a, std::int64_t b) {
  std::vector<Rational> xs{R(a), R(b)};
  std::uniform_int_distribution<int> count(0, 6);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) xs.push_back(random_rational(rng, R(a), R(b), 97));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

PiecewiseLinear build(const std::vector<Rational>& xs, const std::vector<Rational>& slopes, const Rational& y0) {
  std::vector<Rational> ys{y0};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) ys.push_back(ys.back() + slopes[i] * (xs[i + 1] - xs[i]));
  return PiecewiseLinear(xs, ys);
}

std::vector<Rational> random_slopes(Rng& rng, std::size_t n, const Rational& lo, const Rational& hi) {
  std::vector<Rational> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(random_rational(rng, lo, hi));
  return s;
}

void sort_decreasing(std::vector<Rational>& s) {
  std::sort(s.begin(), s.end(), [](const Rational& x, const Rational& y) { return x > y; });
}

std::string describe(const PiecewiseLinear& g) {
  std::ostringstream os;
  os << "knots";
  for (std::size_t i = 0; i < g.xs().size(); ++i) os << " (" << g.xs()[i] << ", " << g.ys()[i] << ")";
  return os.str();
}

void record(SuiteResult& res, const Verdict& v, const std::string& what) {
  if (v.rejected()) {
    ++res.rejected;
    if (res.first_failure.empty()) res.first_failure = "rejected: " + v.detail + " for " + what;
    return;
  }
  ++res.instances;
  if (v.violated()) {
    ++res.violations;
    if (res.first_failure.empty()) res.first_failure = "violated: " + v.detail + " for " + what;
  }
}

void record_bool(SuiteResult& res, bool ok, const std::string& what) {
  ++res.instances;
  if (ok) return;
  ++res.violations;
  if (res.first_failure.empty()) res.first_failure = what;
}

std::string point(std::initializer_list<std::pair<const char*, double>> xs) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [k, v] : xs) os << k << '=' << v << ' ';
  return os.str();
}

}  // namespace

SuiteResult suite_concave(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "concave floor sum";
  Rng rng(seed);
  std::uniform_int_distribution<int> L(1, 30);
  for (int i = 0; i < n; ++i) {
    const std::int64_t a = L(rng) - 15, b = a + L(rng);
    const auto xs = random_knots(rng, a, b);
    auto s = random_slopes(rng, xs.size() - 1, R(-3), R(3));
    sort_decreasing(s);
    const PiecewiseLinear g = build(xs, s, random_rational(rng, R(-5), R(20)));
    record(res, check_concave(g, a, b), describe(g));
  }
  return res;
}

SuiteResult suite_lipschitz_drop(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "decreasing concave Lip_c with a drop";
  Rng rng(seed + 1);
  std::uniform_int_distribution<int> L(1, 30);
  while (res.instances + res.rejected < n) {
    const std::int64_t a = L(rng) - 10, b = a + L(rng);
    const Rational c = random_rational(rng, R(1, 50), R(49, 50));
    const auto xs = random_knots(rng, a, b);
    auto s = random_slopes(rng, xs.size() - 1, -c, R(0));
    sort_decreasing(s);
    const PiecewiseLinear shape = build(xs, s, R(0));
    const Rational drop = shape(R(a)) - shape(R(a + 1));
    if (drop.sign() <= 0) continue;
    // place an integer inside (g(a+1), g(a)] so the floor drops at a
    const Rational N = R(static_cast<long>(L(rng)));
    const Rational y0 = N + drop * random_rational(rng, R(1, 100), R(99, 100));
    const PiecewiseLinear g = build(xs, s, y0);
    record(res, check_t25(g, a, b, c), describe(g) + " c=" + c.to_string());
  }
  return res;
}

SuiteResult suite_split_point(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "split-point Lip_c bound";
  Rng rng(seed + 2);
  std::uniform_int_distribution<int> L(2, 25);
  for (int i = 0; i < n; ++i) {
    const std::int64_t alpha = 0, beta = L(rng);
    const Rational c = random_rational(rng, R(1, 20), R(19, 20));
    const auto xs = random_knots(rng, alpha, beta);
    auto s = random_slopes(rng, xs.size() - 1, -c, R(0));
    sort_decreasing(s);
    const PiecewiseLinear shape = build(xs, s, R(0));
    std::int64_t p = -1;
    for (std::int64_t q = alpha; q < beta; ++q)
      if (shape(q) > shape(q + 1) && shape(alpha) - shape(q + 1) < R(1)) p = q;
    if (p < 0) continue;
    const Rational delta = (shape(p) - shape(p + 1)) / R(2);
    const Rational y0 = R(7) - shape(p + 1) - delta;
    const PiecewiseLinear g = build(xs, s, y0);
    record(res, check_t13(g, alpha, beta, p, c), describe(g) + " p=" + std::to_string(p));
  }
  return res;
}

SuiteResult suite_convex(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "convex Lip_1/2 floor sum";
  Rng rng(seed + 3);
  std::uniform_int_distribution<int> L(1, 40);
  for (int i = 0; i < n; ++i) {
    const std::int64_t a = L(rng) - 20, b = a + L(rng);
    const auto xs = random_knots(rng, a, b);
    auto s = random_slopes(rng, xs.size() - 1, R(-1, 2), R(0));
    std::sort(s.begin(), s.end());
    const PiecewiseLinear shape = build(xs, s, R(0));
    const Rational lift = R(static_cast<long>(L(rng) % 3)) - shape(b);
    const PiecewiseLinear g = build(xs, s, lift);
    record(res, check_convex(g, a, b), describe(g));
  }
  return res;
}

SuiteResult suite_convex_improved(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "improved convex floor sum";
  Rng rng(seed + 4);
  std::uniform_int_distribution<int> L(1, 40);
  for (int i = 0; i < n; ++i) {
    const std::int64_t a = 0, b = L(rng);
    const auto xs = random_knots(rng, a, b);
    auto s = random_slopes(rng, xs.size() - 1, R(-1, 2), R(0));
    std::sort(s.begin(), s.end());
    const PiecewiseLinear shape = build(xs, s, R(0));
    const PiecewiseLinear g = build(xs, s, -shape(b));
    // first knot from which every slope is at least -1/3
    Rational t = R(b);
    for (std::size_t j = 0; j + 1 < xs.size(); ++j)
      if (s[j] >= R(-1, 3)) {
        t = xs[j];
        break;
      }
    record(res, check_convex_improved(g, a, b, t), describe(g) + " t=" + t.to_string());
  }
  return res;
}

SuiteResult suite_lattice(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "T against lattice count";
  Rng rng(seed + 5);
  std::uniform_int_distribution<int> len(1, 50);
  std::uniform_real_distribution<double> val(0, 100);
  for (int trial = 0; trial < n; ++trial) {
    const std::int64_t a = static_cast<std::int64_t>(len(rng)) - 25;
    const int width = len(rng);
    std::vector<double> v(static_cast<std::size_t>(width) + 1);
    for (auto& x : v) x = val(rng);
    auto g = [&](std::int64_t m) { return v[static_cast<std::size_t>(m - a)]; };
    // points (m, k) with 1 <= k <= g(m), end columns weighted 1/2, kept in halves
    std::int64_t twice = 0;
    for (std::int64_t m = a; m <= a + width; ++m) {
      std::int64_t col = 0;
      for (int k = 1; k <= 100; ++k)
        if (k <= g(m)) ++col;
      twice += (m == a || m == a + width) ? col : 2 * col;
    }
    const Rational t = tfs(g, a, a + width).value;
    bool ok = Rational(2) * t == Rational(static_cast<long>(twice));
    for (std::int64_t p = a + 1; ok && p < a + width; ++p) ok = tfs(g, a, p).value + tfs(g, p, a + width).value == t;
    record_bool(res, ok, "mismatch at a=" + std::to_string(a) + " width=" + std::to_string(width));
  }
  return res;
}

SuiteResult suite_phase_bounds(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "phase bounds F+1/4 < theta/pi < G+1/4";
  Rng rng(seed + 6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < n; ++i) {
    const double nu = 30 * u(rng);
    const double lam = 0.05 + (3 * nu + 40) * u(rng);
    const double off = theta_offset(nu, lam) / std::numbers::pi;
    record_bool(res, F(lam, nu) + 0.25 < off && off < G(lam, nu) + 0.25, point({{"nu", nu}, {"lambda", lam}}));
  }
  return res;
}

SuiteResult suite_phase_difference(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "phase difference bounds";
  Rng rng(seed + 7);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < n; ++i) {
    const double lam = 1 + 80 * u(rng), mu = lam * u(rng), z = lam * u(rng);
    const double g = gamma_phase(lam, mu, z);
    bool ok = g < G(lam, z) - F(mu, z) && g < G(lam, z) + 0.25;
    if (z < mu) ok = ok && g < Phi(lam, mu, z) + H(mu, z);
    if (z <= mu) ok = ok && Phi(lam, mu, z) < g && g < Phi(lam, mu, z) + 0.25;
    record_bool(res, ok, point({{"lambda", lam}, {"mu", mu}, {"z", z}}));
  }
  return res;
}

SuiteResult suite_zero_counts(std::uint64_t seed, int n) {
  SuiteResult res;
  res.name = "phase count vs cross-product scan";
  Rng rng(seed + 8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < n; ++i) {
    const double r = 0.05 + 0.9 * u(rng);
    const double lam = 0.5 + 60 * u(rng);
    const int m = static_cast<int>(u(rng) * (lam + 3));
    const auto byphase = static_cast<std::int64_t>(std::floor(Theta(r, m, lam) / std::numbers::pi));
    record_bool(res, byphase == count_zeros_crossproduct(r, m, lam),
                point({{"r", r}, {"m", static_cast<double>(m)}, {"lambda", lam}}));
  }
  return res;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int n) {
  return {suite_concave(seed, n),         suite_lipschitz_drop(seed, n),   suite_split_point(seed, n / 2),
          suite_convex(seed, n),          suite_convex_improved(seed, n),  suite_lattice(seed, n / 10),
          suite_phase_bounds(seed, n / 2), suite_phase_difference(seed, n / 2), suite_zero_counts(seed, n / 20)};
}

}  // namespace polya
