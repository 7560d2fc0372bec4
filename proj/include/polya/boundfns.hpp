#pragma once

// Elementary bound functions for the Bessel phase difference:
//
//   G_lam(z)  = (sqrt(lam^2 - z^2) - z arccos(z/lam)) / pi   on [0, lam], 0 beyond
//   H_mu(z)   = (3 mu^2 + 2 z^2) / (24 pi (mu^2 - z^2)^{3/2})  on [0, mu)
//   F_mu(z)   = max(G_mu(z) - H_mu(z), -1/4) on [0, mu), -1/4 beyond
//   Phi(z)    = G_lam(z) - G_mu(z)
//
// Each comes in a double-precision flavour (oracles, plots) and a verified
// flavour returning a rational that is provably below or above the true
// value. Only the verified flavour is used on the certification path.

#include "polya/exactnum.hpp"

namespace polya {

/// Direction and precision of a verified evaluation.
struct Verified {
  enum class Side { Lower, Upper };
  Side side;
  int precision;

  static constexpr Verified lower(int k = kDefaultPrecision) { return {Side::Lower, k}; }
  static constexpr Verified upper(int k = kDefaultPrecision) { return {Side::Upper, k}; }
  constexpr Verified flipped() const { return {side == Side::Lower ? Side::Upper : Side::Lower, precision}; }
  constexpr bool is_upper() const { return side == Side::Upper; }
};

// Float mode.
double G(double lambda, double z);
double H(double mu, double z);
double F(double mu, double z);
double Phi(double lambda, double mu, double z);

/// c = arccos(mu/lambda)/pi, the Lipschitz constant of Phi on [0, mu].
double lipschitz_c(double lambda, double mu);

/// omega_0 = sqrt(3)/(2 pi) - 1/6, so that G_lam(lam/2) = omega_0 lam.
double omega0();

// Verified mode. Arguments are exact rationals.
Rational G(const Rational& lambda, const Rational& z, Verified mode);
/// Throws DomainError when z >= mu, or (upper side) when the rounded
/// (mu^2 - z^2)^{3/2} cannot be kept away from zero.
Rational H(const Rational& mu, const Rational& z, Verified mode);
Rational F(const Rational& mu, const Rational& z, Verified mode);
Rational Phi(const Rational& lambda, const Rational& mu, const Rational& z, Verified mode);

/// Verified enclosure of omega_0.
BoundPair omega0_bounds(int k);

}  // namespace polya
