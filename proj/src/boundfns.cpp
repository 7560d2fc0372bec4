#include "polya/boundfns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polya {

namespace {

const Rational kQuarter(1, 4);
const Rational kMinusQuarter(-1, 4);

void require_positive(double v, const char* what) {
  if (!(v > 0)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

double G(double lambda, double z) {
  require_positive(lambda, "lambda");
  if (z < 0) throw DomainError("G: z must be non-negative");
  if (z >= lambda) return 0.0;
  // With z = lam cos(t): G = lam (sin t - t cos t) / pi. The direct formula
  // cancels badly as z -> lam, so small t goes through the series
  // sin t - t cos t = sum_{n>=1} (-1)^{n+1} 2n t^{2n+1} / (2n+1)!.
  const double t = std::atan2(std::sqrt((lambda - z) * (lambda + z)), z);
  double s;
  if (t < 0.1) {
    const double t2 = t * t;
    double term = t * t2 / 6;  // t^3 / 3!
    s = 0;
    for (int n = 1; n <= 6; ++n) {
      s += (n % 2 ? 1 : -1) * 2 * n * term;
      term *= t2 / ((2 * n + 2) * (2 * n + 3));
    }
  } else {
    s = std::sin(t) - t * std::cos(t);
  }
  return lambda * s / std::numbers::pi;
}

double H(double mu, double z) {
  if (z < 0 || z >= mu) throw DomainError("H: requires 0 <= z < mu");
  const double d = mu * mu - z * z;
  return (3 * mu * mu + 2 * z * z) / (24 * std::numbers::pi * d * std::sqrt(d));
}

double F(double mu, double z) {
  if (mu < 0 || z < 0) throw DomainError("F: requires mu >= 0 and z >= 0");
  if (z >= mu) return -0.25;
  return std::max(G(mu, z) - H(mu, z), -0.25);
}

double Phi(double lambda, double mu, double z) {
  if (!(mu < lambda)) throw DomainError("Phi: requires mu < lambda");
  const double gm = mu > 0 ? G(mu, z) : 0.0;
  return G(lambda, z) - gm;
}

double lipschitz_c(double lambda, double mu) {
  if (!(0 < mu && mu < lambda)) throw DomainError("lipschitz_c: requires 0 < mu < lambda");
  return std::acos(mu / lambda) / std::numbers::pi;
}

double omega0() { return std::sqrt(3.0) / (2 * std::numbers::pi) - 1.0 / 6.0; }

Rational G(const Rational& lambda, const Rational& z, Verified mode) {
  if (lambda.sign() <= 0) throw DomainError("G: lambda must be positive");
  if (z.sign() < 0) throw DomainError("G: z must be non-negative");
  if (z >= lambda) return Rational(0);

  const int k = mode.precision;
  const BoundPair root = sqrt_bounds(lambda * lambda - z * z, k);
  const BoundPair acos = arccos_bounds(z / lambda, k);
  const BoundPair pi = pi_bounds(k);
  // bracket = sqrt(...) - z arccos(...) is increasing in the root and
  // decreasing in the arccos.
  if (mode.is_upper()) {
    const Rational bracket = root.hi() - z * acos.lo();
    return bracket / (bracket.sign() >= 0 ? pi.lo() : pi.hi());
  }
  const Rational bracket = root.lo() - z * acos.hi();
  return bracket / (bracket.sign() >= 0 ? pi.hi() : pi.lo());
}

Rational H(const Rational& mu, const Rational& z, Verified mode) {
  if (z.sign() < 0 || z >= mu) throw DomainError("H: requires 0 <= z < mu");
  const int k = mode.precision;
  const Rational d = mu * mu - z * z;
  const Rational top = Rational(3) * mu * mu + Rational(2) * z * z;
  const BoundPair root = sqrt_bounds(d, k);
  const BoundPair pi = pi_bounds(k);
  if (mode.is_upper()) {
    if (root.lo().is_zero()) throw DomainError("H: denominator not separated from zero at this precision");
    return top / (Rational(24) * pi.lo() * d * root.lo());
  }
  return top / (Rational(24) * pi.hi() * d * root.hi());
}

Rational F(const Rational& mu, const Rational& z, Verified mode) {
  if (mu.sign() < 0 || z.sign() < 0) throw DomainError("F: requires mu >= 0 and z >= 0");
  if (z >= mu) return kMinusQuarter;
  // max is monotone, so bounds of both candidates bound the max.
  Rational candidate;
  try {
    candidate = G(mu, z, mode) - H(mu, z, mode.flipped());
  } catch (const DomainError&) {
    // H cannot be bounded above here; -1/4 is always a lower bound for F.
    if (mode.is_upper()) throw;
    return kMinusQuarter;
  }
  return max(candidate, kMinusQuarter);
}

Rational Phi(const Rational& lambda, const Rational& mu, const Rational& z, Verified mode) {
  if (!(mu < lambda)) throw DomainError("Phi: requires mu < lambda");
  const Rational gm = mu.sign() > 0 ? G(mu, z, mode.flipped()) : Rational(0);
  return G(lambda, z, mode) - gm;
}

BoundPair omega0_bounds(int k) {
  const BoundPair root3 = sqrt_bounds(Rational(3), k + 1);
  const BoundPair pi = pi_bounds(k + 1);
  const Rational sixth(1, 6);
  return {root3.lo() / (Rational(2) * pi.hi()) - sixth, root3.hi() / (Rational(2) * pi.lo()) - sixth};
}

}  // namespace polya
