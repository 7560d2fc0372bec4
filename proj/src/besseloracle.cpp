#include "polya/besseloracle.hpp"

#include "polya/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace polya {

namespace {

constexpr double kPi = std::numbers::pi;

double J(double nu, double x) { return std::cyl_bessel_j(nu, x); }
double Y(double nu, double x) { return std::cyl_neumann(nu, x); }

int sign_of(double v) { return (v > 0) - (v < 0); }

void require_order(double nu, double x) {
  if (!(nu >= 0)) throw DomainError("Bessel order must be non-negative");
  if (!(x > 0)) throw DomainError("Bessel argument must be positive");
}

// Sign changes of J_nu on a grid of step <= 1 over [start, x]. The first
// zero lies beyond nu and consecutive zeros are more than 2.4 apart, so no
// cell can hide two of them. Returns the count and the sign of J_nu(x)
// (0 if x is itself a zero).
std::pair<std::int64_t, int> scan_J(double nu, double x) {
  const double start = std::max(nu, 1e-8);
  if (x <= start) return {0, sign_of(J(nu, x))};
  std::int64_t changes = 0;
  int last = sign_of(J(nu, start));
  if (last == 0) last = 1;
  const auto steps = static_cast<std::int64_t>(std::ceil(x - start));
  for (std::int64_t i = 1; i < steps; ++i) {
    const int s = sign_of(J(nu, start + static_cast<double>(i)));
    if (s != 0 && s != last) {
      ++changes;
      last = s;
    }
  }
  const int end = sign_of(J(nu, x));
  if (end != 0 && end != last) ++changes;
  if (end == 0) ++changes;
  return {changes, end};
}

}  // namespace

std::int64_t count_J_zeros(double nu, double x) {
  require_order(nu, x);
  return scan_J(nu, x).first;
}

double theta_offset(double nu, double x) {
  require_order(nu, x);
  const auto [n, s] = scan_J(nu, x);
  if (s == 0) return static_cast<double>(n) * kPi;
  const double j = J(nu, x);
  const double y = Y(nu, x);
  // Deep below the turning point J underflows and Y overflows; the phase
  // there is -pi/2 to all digits.
  if (std::isnan(y)) return 0.0;
  const double psi = std::atan2(std::abs(j), -s * y);
  return static_cast<double>(n) * kPi + psi;
}

double theta(double nu, double x) { return theta_offset(nu, x) - kPi / 2; }

double Theta(double r, int m, double lambda) {
  if (!(0 < r && r < 1)) throw DomainError("Theta: requires 0 < r < 1");
  if (m < 0) throw DomainError("Theta: requires m >= 0");
  return theta_offset(m, lambda) - theta_offset(m, r * lambda);
}

double gamma_phase(double lambda, double mu, double z) {
  if (!(0 < mu && mu < lambda)) throw DomainError("gamma_phase: requires 0 < mu < lambda");
  return (theta_offset(z, lambda) - theta_offset(z, mu)) / kPi;
}

std::int64_t count_annulus(double r, double lambda) {
  if (!(0 < r && r < 1)) throw DomainError("count_annulus: requires 0 < r < 1");
  if (!(lambda > 0)) throw DomainError("count_annulus: requires lambda > 0");
  std::int64_t total = 0;
  const auto top = static_cast<int>(std::floor(lambda));
  for (int m = 0; m <= top; ++m) {
    const auto k = static_cast<std::int64_t>(std::floor(Theta(r, m, lambda) / kPi));
    total += (m == 0 ? 1 : 2) * std::max<std::int64_t>(k, 0);
  }
  return total;
}

double crossproduct(double r, int m, double x) {
  const double jx = J(m, x), yx = Y(m, x);
  const double jr = J(m, r * x), yr = Y(m, r * x);
  const double L = jx * yr - yx * jr;
  if (std::isfinite(L)) return L;
  // Y_m(rx) blew up: the first product dominates and Y_m(rx) < 0.
  return -static_cast<double>(sign_of(jx)) * std::numeric_limits<double>::max();
}

std::vector<double> crossproduct_zeros(double r, int m, double lambda) {
  if (!(0 < r && r < 1)) throw DomainError("crossproduct_zeros: requires 0 < r < 1");
  if (m < 0 || !(lambda > 0)) throw DomainError("crossproduct_zeros: bad arguments");
  std::vector<double> zeros;
  // No zero lies at or below x = m.
  const double start = std::max(static_cast<double>(m), 1e-6);
  if (lambda <= start) return zeros;
  const double h = std::min(0.5, (1 - r) / 4);
  double a = start;
  double fa = crossproduct(r, m, a);
  while (a < lambda) {
    const double b = std::min(a + h, lambda);
    const double fb = crossproduct(r, m, b);
    if (fb == 0) {
      zeros.push_back(b);
    } else if (sign_of(fa) * sign_of(fb) < 0) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = crossproduct(r, m, mid);
        if (sign_of(fm) == sign_of(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb == 0 ? crossproduct(r, m, b + 1e-9) : fb;
  }
  return zeros;
}

std::int64_t count_zeros_crossproduct(double r, int m, double lambda) {
  return static_cast<std::int64_t>(crossproduct_zeros(r, m, lambda).size());
}

std::int64_t count_annulus_crossproduct(double r, double lambda) {
  std::int64_t total = 0;
  const auto top = static_cast<int>(std::floor(lambda));
  for (int m = 0; m <= top; ++m) total += (m == 0 ? 1 : 2) * count_zeros_crossproduct(r, m, lambda);
  return total;
}

std::int64_t count_disk(double lambda) {
  if (!(lambda > 0)) throw DomainError("count_disk: requires lambda > 0");
  std::int64_t total = 0;
  const auto top = static_cast<int>(std::floor(lambda));
  for (int m = 0; m <= top; ++m) total += (m == 0 ? 1 : 2) * count_J_zeros(m, lambda);
  return total;
}

std::int64_t count_cylinder(double h, double lambda) {
  if (!(h > 0 && lambda > 0)) throw DomainError("count_cylinder: requires h > 0 and lambda > 0");
  const long double L2 = static_cast<long double>(lambda) * lambda;
  const long double step = std::numbers::pi_v<long double> / h;
  std::int64_t total = 0;
  for (std::int64_t n = 1;; ++n) {
    const long double rest = L2 - step * step * n * n;
    if (rest < 0) break;
    auto m = static_cast<std::int64_t>(std::floor(std::sqrt(rest)));
    // guard the square root against rounding at perfect squares
    while ((m + 1) * (m + 1) <= rest) ++m;
    while (m > 0 && m * m > rest) --m;
    total += 1 + 2 * m;
  }
  return total;
}

double cylinder_height(double r) {
  if (!(0 < r && r < 1)) throw DomainError("cylinder_height: requires 0 < r < 1");
  return (1 - r) / std::sqrt(r);
}

}  // namespace polya
