#pragma once

// Regions of the (lambda, mu) plane, 0 < mu < lambda, on which the Polya
// inequality N_{mu/lambda}(lambda) < (lambda^2 - mu^2)/4 is known
// analytically (I to V), and the computational region COMP that the
// certifier has to cover. Membership is decided exactly: inputs are
// rationals and every boundary is algebraic over pi, so each test reduces
// to a rational comparison or a comparison against pi or pi^2.

#include "polya/exactnum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polya {

enum class Region : unsigned { I = 1, II = 2, III = 4, IV = 8, V = 16, COMP = 32 };

class LabelSet {
 public:
  LabelSet() = default;

  void add(Region r) { bits_ |= static_cast<unsigned>(r); }
  bool has(Region r) const { return (bits_ & static_cast<unsigned>(r)) != 0; }
  bool empty() const { return bits_ == 0; }
  /// Any of I..V.
  bool has_theory() const { return (bits_ & 31u) != 0; }
  unsigned bits() const { return bits_; }
  /// "I,III,COMP", or "NONE" for the empty set.
  std::string to_string() const;

  friend bool operator==(LabelSet a, LabelSet b) { return a.bits_ == b.bits_; }

 private:
  unsigned bits_ = 0;
};

const char* region_name(Region r);

/// r_0..r_5 = 0, 2/3, 4/5, 17/20, 22/25, 1.
const std::vector<Rational>& region_II_breakpoints();

bool in_region_I(const Rational& lambda, const Rational& mu);
/// mu > zeta_II(lambda), decided branch by branch.
bool in_region_II(const Rational& lambda, const Rational& mu);
/// The same set described through lambda < eta_II(mu / lambda).
bool in_region_II_eta(const Rational& lambda, const Rational& mu);
bool in_region_III(const Rational& lambda, const Rational& mu);
bool in_region_IV(const Rational& lambda, const Rational& mu);
bool in_region_V(const Rational& lambda, const Rational& mu);
bool in_comp(const Rational& lambda, const Rational& mu);

/// All labels containing the point. Requires 0 <= mu < lambda.
LabelSet classify(const Rational& lambda, const Rational& mu);
LabelSet classify(double lambda, double mu);
bool in_comp(double lambda, double mu);

/// Theory labels or COMP, evaluated cheapest-first with early exit.
bool covered(const Rational& lambda, const Rational& mu);

// Boundary functions in double precision, for plots and numeric checks.
double zeta_I(double lambda);
double zeta_II(double lambda);
double zeta_III(double lambda);
double zeta_IV_minus(double lambda);
double zeta_IV_plus(double lambda);
double zeta_V_minus(double lambda);
double zeta_V_plus(double lambda);
double zeta_comp(double lambda);
double eta_I(double r);
double eta_II(double r);
double eta_III_minus(double r);
double eta_III_plus(double r);
double eta_IV(double r);
double eta_V(double r);

// ---------------------------------------------------------------------------

/// Value a pi^2 + b with rational coefficients.
struct PiSquaredForm {
  Rational a;
  Rational b;

  double value() const;
  /// Exact sign, decided with pi enclosures.
  int sign() const;
  std::string to_string() const;
};

/// tau in (0,1]^j with sum 1.
class TauVector {
 public:
  explicit TauVector(std::vector<Rational> tau);
  const std::vector<Rational>& values() const { return tau_; }
  std::size_t size() const { return tau_.size(); }

 private:
  std::vector<Rational> tau_;
};

/// S_j(r; tau) = (sum n^2 tau_n) pi^2 r (1+r)^2 - 16 sum 1/tau_n - 4 j (1 - r^2).
PiSquaredForm S_poly(int j, const Rational& r, const TauVector& tau);

/// The four (j, r_j, tau) choices that make S_j positive.
struct SCase {
  int j;
  Rational r;
  TauVector tau;
};
std::vector<SCase> S_cases();

// ---------------------------------------------------------------------------

struct CoverageReport {
  std::int64_t points = 0;
  std::int64_t uncovered = 0;
  std::vector<std::pair<Rational, Rational>> witnesses;  // first few uncovered points
  std::int64_t ordering_checks = 0;
  std::int64_t ordering_failures = 0;
  std::string first_ordering_failure;

  bool ok() const { return uncovered == 0 && ordering_failures == 0; }
};

/// Grid check that every (lambda, mu) with 0 < mu < lambda <= lambda_max on
/// the lattice step Z^2 is covered by I..V or COMP, and that for
/// lambda > 150 the boundaries are ordered as the covering argument needs.
CoverageReport coverage_check(const Rational& step, const Rational& lambda_max = Rational(400));

/// zeta_IV+(150) / zeta_V-(150) = 7 (sqrt(3 (75 - 8 pi)) + 15) / (60 pi).
BoundPair ratio_IV_V_at_150(int k);
/// zeta_V+(150) / zeta_comp(150) = (25/44)(1 + sqrt(1 - 8 pi / 75)), a lower
/// bound for the ratio past 150.
BoundPair ratio_V_comp_past_150(int k);

}  // namespace polya
