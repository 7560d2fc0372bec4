#include "doctest.h"

#include "polya/besseloracle.hpp"
#include "polya/boundfns.hpp"
#include "polya/floorsum.hpp"
#include "polya/suites.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace polya;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// Phase increments from the modulus: theta' = 2 / (pi x M^2), with J and Y
// taken from Boost rather than the standard library.
double theta_increment_ode(double nu, double x0, double x1) {
  auto f = [nu](double t) {
    const double j = boost::math::cyl_bessel_j(nu, t), y = boost::math::cyl_neumann(nu, t);
    return 2 / (pi * t * (j * j + y * y));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x0, x1, 15, 1e-12);
}

std::int64_t disk_by_zero_table(double lambda) {
  std::int64_t total = 0;
  for (int m = 0; m <= lambda; ++m) {
    int k = 0;
    while (boost::math::cyl_bessel_j_zero(static_cast<double>(m), k + 1) <= lambda) ++k;
    total += (m == 0 ? 1 : 2) * k;
  }
  return total;
}

std::int64_t cylinder_brute(double h, double lambda) {
  std::int64_t c = 0;
  for (int n = 1; n < 1000; ++n)
    for (int m = -1000; m <= 1000; ++m)
      if (m * m + pi * pi * n * n / (h * h) <= lambda * lambda) ++c;
  return c;
}

}  // namespace

TEST_CASE("phase at zeros of J, at 0+ and at infinity") {
  const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
  CHECK(j01 == Approx(2.404826).epsilon(1e-6));
  CHECK(theta(0, j01) == Approx(pi / 2).epsilon(1e-9));
  for (int nu : {0, 1, 3, 10}) {
    for (int k = 1; k <= 6; ++k) {
      const double z = boost::math::cyl_bessel_j_zero(static_cast<double>(nu), k);
      CHECK(theta(nu, z) == Approx((k - 0.5) * pi).epsilon(1e-9));
    }
  }
  // The O(1/x) remainder is (4 nu^2 - 1) / (8x) + O(1/x^3); at x = 1000 it
  // is 0.0124 for nu = 5, so the plain 1e-2 window only fits nu <= 1 there.
  for (double nu : {0.0, 1.0, 5.0}) {
    const double rest = theta(nu, 1000) + (nu / 2 + 0.25) * pi - 1000;
    if (nu <= 1) CHECK(std::abs(rest) < 1e-2);
    CHECK(rest == Approx((4 * nu * nu - 1) / 8000).epsilon(1e-3));
    CHECK(std::abs(theta(nu, 2000) + (nu / 2 + 0.25) * pi - 2000) < 1e-2);
  }
  CHECK(theta(5, 0.01) == Approx(-pi / 2).epsilon(1e-6));
  CHECK(theta_offset(150, 0.05) >= 0);
  CHECK_THROWS_AS(theta(1, 0), DomainError);
  CHECK_THROWS_AS(theta(-1, 1), DomainError);
}

TEST_CASE("phase agrees with the integrated modulus equation") {
  for (double nu : {0.0, 0.5, 1.0, 2.0, 4.5}) {
    const double x0 = 0.5 + nu;
    for (double x1 : {x0 + 3, x0 + 11.3, x0 + 30}) {
      CHECK(theta(nu, x1) - theta(nu, x0) == Approx(theta_increment_ode(nu, x0, x1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("phase functions are increasing") {
  for (double nu : {0.0, 2.0, 7.3, 20.0}) {
    double prev = theta(nu, 0.05);
    for (double x = 0.1; x < 80; x += 0.1) {
      const double t = theta(nu, x);
      REQUIRE(t > prev - 1e-12);
      prev = t;
    }
  }
  for (double r : {0.2, 0.5, 0.8})
    for (int m : {0, 3, 12}) {
      double prev = 0;
      for (double lam = 0.2; lam < 60; lam += 0.2) {
        const double t = Theta(r, m, lam);
        REQUIRE(t > prev - 1e-12);
        prev = t;
        if (lam <= m) REQUIRE(t < pi);
      }
    }
  CHECK(Theta(0.5, 2, 1e-3) == Approx(0).epsilon(1e-9));
}

TEST_CASE("first annulus eigenvalue for r = 1/2") {
  CHECK(Theta(0.5, 0, 6.0) < pi);
  CHECK(Theta(0.5, 0, 6.5) > pi);
  CHECK(count_zeros_crossproduct(0.5, 0, 6.0) == 0);
  CHECK(count_zeros_crossproduct(0.5, 0, 6.5) == 1);
  CHECK(count_annulus(0.5, 6.0) == 0);
  const auto z = crossproduct_zeros(0.5, 0, 6.5);
  REQUIRE(z.size() == 1);
  CHECK(std::abs(crossproduct(0.5, 0, z[0])) < 1e-9);
  CHECK(count_zeros_crossproduct(0.3, 9, 8.5) == 0);
}

TEST_CASE("phase and cross-product counts agree") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    const double r = 0.05 + 0.9 * u(rng);
    const double lam = 0.5 + 60 * u(rng);
    const int m = static_cast<int>(u(rng) * (lam + 3));
    const auto byphase = static_cast<std::int64_t>(std::floor(Theta(r, m, lam) / pi));
    INFO("r=", r, " m=", m, " lam=", lam);
    REQUIRE(byphase == count_zeros_crossproduct(r, m, lam));
  }
}

TEST_CASE("phase bounds by the elementary functions") {
  std::vector<double> orders;
  for (int z = 0; z <= 20; ++z) orders.push_back(z);
  orders.push_back(0.5);
  orders.push_back(7.3);
  for (double z : orders) {
    for (double lam = 0.25; lam <= 3 * z + 40; lam += 0.25) {
      const double off = theta_offset(z, lam) / pi;
      INFO("z=", z, " lam=", lam);
      REQUIRE(F(lam, z) + 0.25 < off);
      REQUIRE(off < G(lam, z) + 0.25);
    }
  }
}

TEST_CASE("bounds on the phase difference") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 3000; ++i) {
    const double lam = 1 + 80 * u(rng), mu = lam * u(rng), z = lam * u(rng);
    const double g = gamma_phase(lam, mu, z);
    INFO("lam=", lam, " mu=", mu, " z=", z);
    REQUIRE(g < G(lam, z) - F(mu, z));
    REQUIRE(g < G(lam, z) + 0.25);
    if (z < mu) REQUIRE(g < Phi(lam, mu, z) + H(mu, z));
    if (z <= mu) {
      REQUIRE(Phi(lam, mu, z) < g);
      REQUIRE(g < Phi(lam, mu, z) + 0.25);
    }
  }
}

TEST_CASE("disk counting function") {
  CHECK(count_disk(2.0) == 0);
  CHECK(count_disk(2.5) == 1);
  const double w0 = omega0();
  for (double lam = 0.5; lam <= 60; lam += 0.5) {
    const std::int64_t n = count_disk(lam);
    REQUIRE(n == disk_by_zero_table(lam));
    REQUIRE(static_cast<double>(n) < lam * lam / 4 - std::floor(w0 * lam) / 2);
  }
}

TEST_CASE("cylinder counting function") {
  CHECK(count_cylinder(1.0, 3.0) == 0);
  CHECK(count_cylinder(pi, 1.5) == 3);
  CHECK(cylinder_height(0.25) == Approx(1.5));
  for (double h : {0.3, 1.0, 2.7})
    for (double lam = 1; lam < 40; lam += 1.7) REQUIRE(count_cylinder(h, lam) == cylinder_brute(h, lam));
}

TEST_CASE("annulus counts: Polya, cylinder comparison, trapezoidal form, majorants") {
  for (int i = 1; i <= 9; ++i) {
    const double r = i / 10.0;
    for (double lam = 0.5; lam <= 40; lam += 0.37) {
      const std::int64_t n = count_annulus(r, lam);
      INFO("r=", r, " lam=", lam);
      REQUIRE(static_cast<double>(n) < (1 - r * r) * lam * lam / 4);
      REQUIRE(n <= count_cylinder(cylinder_height(r), lam));
      REQUIRE(n == count_annulus_crossproduct(r, lam));
      const double mu = r * lam;
      const auto b = static_cast<std::int64_t>(std::floor(lam)) + 1;
      const Rational twoT = Rational(2) * tfs([&](std::int64_t m) { return gamma_phase(lam, mu, m); }, 0, b).value;
      REQUIRE(twoT == Rational(static_cast<long>(n)));
      const double p = P(lam, mu);
      REQUIRE(static_cast<double>(n) <= p);
      const Rational lq = Rational::from_double(lam), mq = Rational::from_double(mu);
      REQUIRE(p <= P_bar(lq, mq).to_double());
    }
  }
}

TEST_CASE("seeded phase suites") {
  for (const SuiteResult& res : {suite_phase_bounds(5, 3000), suite_phase_difference(5, 3000), suite_zero_counts(5, 200)}) {
    INFO(res.name, ": ", res.first_failure);
    CHECK(res.ok());
  }
  const SuiteResult lattice = suite_lattice(5, 300);
  CHECK(lattice.ok());
}
