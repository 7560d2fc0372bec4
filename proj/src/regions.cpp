#include "polya/regions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace polya {

namespace {

constexpr double kPi = std::numbers::pi;

const Region kAll[] = {Region::I, Region::II, Region::III, Region::IV, Region::V, Region::COMP};

void require_point(const Rational& lambda, const Rational& mu) {
  if (lambda.sign() <= 0) throw DomainError("lambda must be positive");
  if (mu.sign() < 0 || !(mu < lambda)) throw DomainError("requires 0 <= mu < lambda");
}

// lambda >= c * pi sqrt(r) / (1 - r), for 0 < r < 1 and c >= 1.
bool at_least_breakpoint(const Rational& lambda, int c, const Rational& r) {
  const Rational one_minus = Rational(1) - r;
  const Rational q = lambda * lambda * one_minus * one_minus / (Rational(c * c) * r);
  return compare_with_pi_squared(q) > 0;
}

double breakpoint(int c, double r) { return c * kPi * std::sqrt(r) / (1 - r); }

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::COMP: return "COMP";
  }
  return "?";
}

std::string LabelSet::to_string() const {
  if (empty()) return "NONE";
  std::string out;
  for (Region r : kAll) {
    if (!has(r)) continue;
    if (!out.empty()) out += ',';
    out += region_name(r);
  }
  return out;
}

const std::vector<Rational>& region_II_breakpoints() {
  static const std::vector<Rational> r{Rational(0), Rational(2, 3), Rational(4, 5),
                                       Rational(17, 20), Rational(22, 25), Rational(1)};
  return r;
}

bool in_region_I(const Rational& lambda, const Rational& mu) {
  return mu.sign() > 0 && mu < lambda && lambda * lambda - Rational(8) <= mu * mu;
}

bool in_region_II(const Rational& lambda, const Rational& mu) {
  if (!(mu.sign() > 0 && mu < lambda)) return false;
  const auto& r = region_II_breakpoints();
  // Ranges in increasing lambda: A1 B1 A2 B2 A3 B3 A4 B4 A5, where A_i is
  // [i b_{i-1}, i b_i) with the curved boundary and B_i is
  // [i b_i, (i+1) b_i) with zeta = r_i lambda; b_i = pi sqrt(r_i)/(1-r_i).
  int i = 1;
  bool straight = false;
  for (int k = 1; k <= 4; ++k) {
    if (!at_least_breakpoint(lambda, k, r[k])) break;  // below k b_k: in A_k
    i = k;
    straight = true;
    if (!at_least_breakpoint(lambda, k + 1, r[k])) break;  // in B_k
    i = k + 1;
    straight = false;
  }
  if (straight) return mu > r[i] * lambda;
  // mu > zeta  <=>  (lambda - mu)^2 lambda < i^2 pi^2 mu
  const Rational d = lambda - mu;
  return compare_with_pi_squared(d * d * lambda / (Rational(i * i) * mu)) < 0;
}

bool in_region_II_eta(const Rational& lambda, const Rational& mu) {
  if (!(mu.sign() > 0 && mu < lambda)) return false;
  const Rational r = mu / lambda;
  const auto& br = region_II_breakpoints();
  int j = 0;
  while (j < 4 && br[j + 1] <= r) ++j;
  // lambda < (j+1) pi sqrt(r) / (1-r)
  return !at_least_breakpoint(lambda, j + 1, r);
}

bool in_region_III(const Rational& lambda, const Rational& mu) {
  return lambda > Rational(10) && mu.sign() > 0 && mu * mu <= lambda / Rational(5) - Rational(2);
}

bool in_region_IV(const Rational& lambda, const Rational& mu) {
  return lambda >= Rational(578, 45) && Rational(64, 225) <= mu && mu <= lambda / Rational(10) - Rational(1);
}

bool in_region_V(const Rational& lambda, const Rational& mu) {
  // zeta_V- < mu < zeta_V+  <=>  mu (lambda - mu) > 4 pi lambda, which also
  // forces lambda > 16 pi.
  if (!(mu.sign() > 0 && mu < lambda)) return false;
  return compare_with_pi(mu * (lambda - mu) / (Rational(4) * lambda)) > 0;
}

bool in_comp(const Rational& lambda, const Rational& mu) {
  return Rational(5, 2) <= lambda && lambda <= Rational(150) && mu.sign() >= 0 &&
         mu <= Rational(22, 25) * lambda;
}

LabelSet classify(const Rational& lambda, const Rational& mu) {
  require_point(lambda, mu);
  LabelSet s;
  if (in_region_I(lambda, mu)) s.add(Region::I);
  if (in_region_II(lambda, mu)) s.add(Region::II);
  if (in_region_III(lambda, mu)) s.add(Region::III);
  if (in_region_IV(lambda, mu)) s.add(Region::IV);
  if (in_region_V(lambda, mu)) s.add(Region::V);
  if (in_comp(lambda, mu)) s.add(Region::COMP);
  return s;
}

LabelSet classify(double lambda, double mu) { return classify(Rational::from_double(lambda), Rational::from_double(mu)); }

bool in_comp(double lambda, double mu) { return in_comp(Rational::from_double(lambda), Rational::from_double(mu)); }

bool covered(const Rational& lambda, const Rational& mu) {
  return in_comp(lambda, mu) || in_region_I(lambda, mu) || in_region_III(lambda, mu) ||
         in_region_IV(lambda, mu) || in_region_V(lambda, mu) || in_region_II(lambda, mu);
}

double zeta_I(double lambda) { return lambda * lambda <= 8 ? 0.0 : std::sqrt(lambda * lambda - 8); }

double zeta_II(double lambda) {
  static const double r[] = {0, 2.0 / 3, 4.0 / 5, 17.0 / 20, 22.0 / 25};
  auto curved = [lambda](int i) {
    const double ip = i * kPi;
    return lambda - ip / (2 * lambda) * (std::sqrt(4 * lambda * lambda + ip * ip) - ip);
  };
  for (int i = 1; i <= 4; ++i) {
    if (lambda < breakpoint(i, r[i])) return curved(i);
    if (lambda < breakpoint(i + 1, r[i])) return r[i] * lambda;
  }
  return curved(5);
}

double zeta_III(double lambda) { return std::sqrt(lambda / 5 - 2); }
double zeta_IV_minus(double) { return 64.0 / 225; }
double zeta_IV_plus(double lambda) { return lambda / 10 - 1; }
double zeta_V_minus(double lambda) { return 0.5 * (lambda - std::sqrt(lambda * (lambda - 16 * kPi))); }
double zeta_V_plus(double lambda) { return 0.5 * (lambda + std::sqrt(lambda * (lambda - 16 * kPi))); }
double zeta_comp(double lambda) { return 22.0 / 25 * lambda; }

double eta_I(double r) { return std::sqrt(8 / (1 - r * r)); }

double eta_II(double r) {
  static const double br[] = {0, 2.0 / 3, 4.0 / 5, 17.0 / 20, 22.0 / 25, 1};
  int j = 0;
  while (j < 4 && br[j + 1] <= r) ++j;
  return breakpoint(j + 1, r);
}

double eta_III_minus(double r) { return (1 - std::sqrt(1 - 200 * r * r)) / (10 * r * r); }
double eta_III_plus(double r) { return (1 + std::sqrt(1 - 200 * r * r)) / (10 * r * r); }
double eta_IV(double r) { return std::max(64 / (225 * r), 10 / (1 - 10 * r)); }
double eta_V(double r) { return 4 * kPi / (r * (1 - r)); }

// ---------------------------------------------------------------------------

double PiSquaredForm::value() const { return a.to_double() * kPi * kPi + b.to_double(); }

int PiSquaredForm::sign() const {
  if (a.is_zero()) return b.sign();
  // a pi^2 + b > 0  <=>  pi^2 > -b/a (a > 0), or pi^2 < -b/a (a < 0)
  const int c = compare_with_pi_squared(-b / a);
  return a.sign() > 0 ? -c : c;
}

std::string PiSquaredForm::to_string() const {
  std::ostringstream os;
  os << a << "*pi^2 + " << b;
  return os.str();
}

TauVector::TauVector(std::vector<Rational> tau) : tau_(std::move(tau)) {
  if (tau_.empty()) throw DomainError("tau must be non-empty");
  Rational sum(0);
  for (const auto& t : tau_) {
    if (t.sign() <= 0 || t > Rational(1)) throw DomainError("tau entries must lie in (0, 1]");
    sum += t;
  }
  if (sum != Rational(1)) throw DomainError("tau entries must sum to 1");
}

PiSquaredForm S_poly(int j, const Rational& r, const TauVector& tau) {
  if (j < 1 || j > 4) throw DomainError("S_poly: j must be 1..4");
  if (tau.size() != static_cast<std::size_t>(j)) throw DomainError("S_poly: tau must have length j");
  if (!(r.sign() > 0 && r < Rational(1))) throw DomainError("S_poly: requires 0 < r < 1");
  Rational moment(0), inverse(0);
  for (int n = 1; n <= j; ++n) {
    const Rational& t = tau.values()[static_cast<std::size_t>(n - 1)];
    moment += Rational(n * n) * t;
    inverse += Rational(1) / t;
  }
  const Rational one_plus = Rational(1) + r;
  return {moment * r * one_plus * one_plus, Rational(-16) * inverse - Rational(4 * j) * (Rational(1) - r * r)};
}

std::vector<SCase> S_cases() {
  return {
      {1, Rational(2, 3), TauVector({Rational(1)})},
      {2, Rational(4, 5), TauVector({Rational(3, 8), Rational(5, 8)})},
      {3, Rational(17, 20), TauVector({Rational(1, 4), Rational(1, 4), Rational(1, 2)})},
      {4, Rational(22, 25), TauVector({Rational(1, 6), Rational(1, 6), Rational(1, 5), Rational(7, 15)})},
  };
}

// ---------------------------------------------------------------------------

CoverageReport coverage_check(const Rational& step, const Rational& lambda_max) {
  if (step.sign() <= 0) throw DomainError("coverage_check: step must be positive");
  CoverageReport rep;
  double prev_ratio = 0;
  auto order = [&](bool ok, const std::string& what, double lam) {
    ++rep.ordering_checks;
    if (ok) return;
    if (rep.ordering_failures++ == 0) rep.first_ordering_failure = what + " at lambda=" + std::to_string(lam);
  };
  for (Rational lam = step; lam <= lambda_max; lam += step) {
    for (Rational mu = step; mu < lam; mu += step) {
      ++rep.points;
      if (!covered(lam, mu)) {
        ++rep.uncovered;
        if (rep.witnesses.size() < 10) rep.witnesses.emplace_back(lam, mu);
      }
    }
    if (lam > Rational(150)) {
      const double l = lam.to_double();
      order(zeta_IV_minus(l) < zeta_III(l), "zeta_IV- < zeta_III", l);
      order(zeta_III(l) < zeta_IV_plus(l), "zeta_III < zeta_IV+", l);
      order(zeta_V_minus(l) < zeta_IV_plus(l), "zeta_V- < zeta_IV+", l);
      order(zeta_comp(l) < zeta_V_plus(l), "zeta_comp < zeta_V+", l);
      const double ratio = zeta_IV_plus(l) / zeta_V_minus(l);
      order(ratio > prev_ratio, "zeta_IV+/zeta_V- increasing", l);
      prev_ratio = ratio;
    }
  }
  return rep;
}

BoundPair ratio_IV_V_at_150(int k) {
  const BoundPair pi = pi_bounds(k + 2);
  const BoundPair inner = BoundPair::exact(Rational(3)) * (BoundPair::exact(Rational(75)) - BoundPair::exact(Rational(8)) * pi);
  const BoundPair root = sqrt_bounds(inner, k + 2);
  return BoundPair::exact(Rational(7)) * (root + BoundPair::exact(Rational(15))) / (BoundPair::exact(Rational(60)) * pi);
}

BoundPair ratio_V_comp_past_150(int k) {
  const BoundPair pi = pi_bounds(k + 2);
  const BoundPair inner = BoundPair::exact(Rational(1)) - BoundPair::exact(Rational(8, 75)) * pi;
  const BoundPair root = sqrt_bounds(inner, k + 2);
  return BoundPair::exact(Rational(25, 44)) * (BoundPair::exact(Rational(1)) + root);
}

}  // namespace polya
