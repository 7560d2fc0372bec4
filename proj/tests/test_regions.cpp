#include "doctest.h"

#include "polya/besseloracle.hpp"
#include "polya/regions.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace polya;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
Rational R(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify(R(2), R(1)).has(Region::I));
  CHECK_FALSE(classify(R(2), R(1)).has(Region::COMP));
  CHECK(classify(R(150), R(1, 5)).has(Region::III));
  CHECK(classify(R(150), R(1, 5)).has(Region::COMP));
  CHECK(classify(R(160), R(80)).has(Region::V));
  CHECK(classify(R(100), R(92)).has(Region::II));
  CHECK(classify(R(100), R(92)).to_string() == "II");
  CHECK(classify(R(1), R(0)).to_string() == "NONE");
  CHECK_THROWS_AS(classify(R(3), R(3)), DomainError);
  CHECK_THROWS_AS(classify(R(3), R(-1)), DomainError);

  // zeta_V at 160 straddles 80
  CHECK(zeta_V_minus(160) < 80);
  CHECK(80 < zeta_V_plus(160));
  // j = 4 branch of eta_II at r = 0.92 exceeds 100
  CHECK(eta_II(0.92) == Approx(5 * pi * std::sqrt(0.92) / 0.08));
  CHECK(eta_II(0.92) > 188);
}

TEST_CASE("computational region") {
  CHECK(in_comp(R(150), R(132)));
  CHECK_FALSE(in_comp(R(2), R(1)));
  CHECK_FALSE(in_comp(R(100), R(89)));
  CHECK(in_comp(R(5, 2), R(0)));
  CHECK_FALSE(in_comp(R(151), R(3)));
  CHECK(in_comp(100.0, 88.0));
}

TEST_CASE("region boundaries are exact") {
  // III: mu^2 <= lambda/5 - 2 is closed, lambda > 10 open
  CHECK(in_region_III(R(15), R(1)));
  CHECK_FALSE(in_region_III(R(10), R(0)));
  CHECK_FALSE(in_region_III(R(15), R(1) + R(1, 1000000)));
  // IV closed on all sides
  CHECK(in_region_IV(R(578, 45), R(64, 225)));
  CHECK(in_region_IV(R(20), R(1)));
  CHECK_FALSE(in_region_IV(R(578, 45) - R(1, 1000000), R(1, 3)));
  // I: lambda^2 - 8 <= mu^2
  CHECK(in_region_I(R(3), R(1)));
  CHECK_FALSE(in_region_I(R(3), R(1) - R(1, 1000000)));
  // V is open: mu (lambda - mu) = 4 pi lambda never holds for rationals,
  // so test both sides of the float boundary.
  const double l = 200, zm = zeta_V_minus(l);
  CHECK(in_region_V(Rational::from_double(l), Rational::from_double(zm + 1e-9)));
  CHECK_FALSE(in_region_V(Rational::from_double(l), Rational::from_double(zm - 1e-9)));
  CHECK_FALSE(in_region_V(R(50), R(25)));  // 50 < 16 pi
}

TEST_CASE("region I is the union of its two clauses") {
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<long> u(1, 2000);
  for (int i = 0; i < 5000; ++i) {
    const Rational lam = R(u(rng), 200);
    const Rational mu = lam * R(u(rng) % 1000, 1000);
    if (mu.is_zero()) continue;
    const bool small = lam * lam <= R(8);
    REQUIRE(in_region_I(lam, mu) == (small || lam * lam - R(8) <= mu * mu));
  }
}

TEST_CASE("both descriptions of region II agree") {
  std::mt19937_64 rng(89);
  std::uniform_int_distribution<long> u(1, 100000);
  int inside = 0;
  for (int i = 0; i < 2000; ++i) {
    const Rational lam = R(u(rng), 500);
    const long ri = u(rng) % 9999 + 1;
    if (ri == 8800 || ri == 8500 || ri == 8000) continue;
    const Rational mu = lam * R(ri, 10000);
    const bool a = in_region_II(lam, mu), b = in_region_II_eta(lam, mu);
    INFO(lam, " ", mu);
    REQUIRE(a == b);
    inside += a;
  }
  CHECK(inside > 100);
  // dense check along the breakpoints where the branches switch
  for (const Rational& r : {R(2, 3), R(4, 5), R(17, 20), R(22, 25)}) {
    for (long k = 1; k < 400; ++k) {
      const Rational lam = R(k, 2);
      for (const Rational& rr : {r - R(1, 1000), r + R(1, 1000)}) {
        REQUIRE(in_region_II(lam, rr * lam) == in_region_II_eta(lam, rr * lam));
      }
      // On the ray mu = r_j lambda itself the strict inequality mu > zeta
      // drops the segment that the eta description keeps.
      if (in_region_II(lam, r * lam)) REQUIRE(in_region_II_eta(lam, r * lam));
    }
  }
  const Rational l4 = R(121), m4 = R(22, 25) * l4;
  CHECK_FALSE(in_region_II(l4, m4));
  CHECK(in_region_II_eta(l4, m4));
}

TEST_CASE("eta_II jumps exactly at the breakpoints") {
  for (double r : {2.0 / 3, 4.0 / 5, 17.0 / 20, 22.0 / 25}) {
    const double left = eta_II(r * (1 - 1e-12)), right = eta_II(r);
    CHECK(right - left > 1);
  }
  for (double r = 0.01; r < 0.99; r += 0.0137) {
    bool near = false;
    for (double b : {2.0 / 3, 4.0 / 5, 17.0 / 20, 22.0 / 25}) near |= std::abs(r - b) < 1e-3;
    if (!near) CHECK(std::abs(eta_II(r + 1e-9) - eta_II(r)) < 1e-6 * eta_II(r));
  }
  // zeta_II inverts eta_II on the curved branches
  for (double lam = 1; lam < 300; lam += 1.3) {
    const double z = zeta_II(lam);
    const double r = z / lam;
    if (r > 0.01) CHECK(eta_II(r * (1 + 1e-12)) >= lam * (1 - 1e-6));
  }
}

TEST_CASE("S_j polynomials") {
  const auto cases = S_cases();
  REQUIRE(cases.size() == 4);
  const PiSquaredForm s1 = S_poly(1, R(2, 3), cases[0].tau);
  CHECK(s1.a == R(50, 27));
  CHECK(s1.b == R(-492, 27));
  const PiSquaredForm s2 = S_poly(2, R(4, 5), cases[1].tau);
  CHECK(s2.a == R(23 * 243, 750));
  CHECK(s2.b == R(-23 * 2320, 750));
  const PiSquaredForm s3 = S_poly(3, R(17, 20), cases[2].tau);
  CHECK(s3.a == R(535279, 32000));
  CHECK(s3.b == R(-5226560, 32000));
  const PiSquaredForm s4 = S_poly(4, R(22, 25), cases[3].tau);
  CHECK(s4.a == R(17179393, 546875));
  CHECK(s4.b == R(-169474000, 546875));
  const double expected[] = {0.0548, 2.4016, 1.7635, 0.1459};
  for (std::size_t i = 0; i < 4; ++i) {
    const PiSquaredForm s = S_poly(cases[i].j, cases[i].r, cases[i].tau);
    CHECK(std::abs(s.value() - expected[i]) < 1e-3);
    CHECK(s.sign() > 0);
  }
  CHECK(PiSquaredForm{R(1), R(-10)}.sign() < 0);
  CHECK(PiSquaredForm{R(-1), R(10)}.sign() > 0);
  CHECK_THROWS_AS(TauVector({R(1, 2), R(1, 3)}), DomainError);
  CHECK_THROWS_AS(S_poly(2, R(1, 2), TauVector({R(1)})), DomainError);
}

TEST_CASE("covering constants") {
  const BoundPair a = ratio_IV_V_at_150(12);
  CHECK(a.lo() > R(1));
  CHECK(std::abs(a.lo().to_double() - 1.01126) < 1e-4);
  CHECK(a.width() < pow10(-8));
  CHECK(a.lo().to_double() == Approx(zeta_IV_plus(150) / zeta_V_minus(150)).epsilon(1e-12));
  const BoundPair b = ratio_V_comp_past_150(12);
  CHECK(b.lo() > R(1));
  CHECK(std::abs(b.lo().to_double() - 1.03148) < 1e-4);
  CHECK(std::sqrt(1331.0 / 1250) > 1);
}

TEST_CASE("coarse coverage scan") {
  const CoverageReport rep = coverage_check(R(1), R(400));
  CHECK(rep.points == 399 * 400 / 2);
  CHECK(rep.uncovered == 0);
  CHECK(rep.ordering_failures == 0);
  CHECK(rep.ordering_checks > 0);
  CHECK(covered(R(100), R(40)));
  CHECK(in_region_I(R(1), R(1, 2)));
}

TEST_CASE("theory labels imply the Polya inequality at desk scale") {
  int labelled = 0;
  for (long li = 2; li <= 160; ++li) {
    const Rational lam = R(li, 4);
    for (long mi = 1; mi < 20; ++mi) {
      const Rational mu = lam * R(mi, 20);
      const LabelSet s = classify(lam, mu);
      if (!s.has_theory()) continue;
      ++labelled;
      const double l = lam.to_double(), m = mu.to_double();
      INFO(l, " ", m, " ", s.to_string());
      REQUIRE(static_cast<double>(count_annulus(m / l, l)) < (l * l - m * m) / 4);
    }
  }
  CHECK(labelled > 100);
}
