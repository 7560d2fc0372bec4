// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "polya/besseloracle.hpp"
#include "polya/boundfns.hpp"
#include "polya/certifier.hpp"
#include "polya/floorsum.hpp"
#include "polya/regions.hpp"
#include "polya/suites.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace polya;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << " (" << t << ")"
            << std::endl;
  failures += !o.ok;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Outcome certification() {
  const auto t0 = std::chrono::steady_clock::now();
  const Certificate cert = run_cover(SweepConfig{});
  const double sweep = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // verify what a reader of the file would see
  const Certificate back = parse_certificate(serialize_certificate(cert));
  const CertVerdict v = verify_certificate(back);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream os;
  os << "K=" << cert.stats.columns << " evals=" << cert.stats.evaluations << " final=" << cert.stats.final_lambda << " ("
     << g17(cert.stats.final_lambda.to_double()) << ") sweep=" << g17(sweep) << "s verify=" << (v.ok ? "pass" : v.failure)
     << " errors=" << (cert.error.empty() ? "none" : cert.error);
  const bool ok = cert.complete && cert.error.empty() && v.ok && cert.stats.final_lambda <= Rational(5, 2) &&
                  cert.stats.columns >= 100 && cert.stats.columns <= 700 && cert.stats.evaluations >= 3000 &&
                  cert.stats.evaluations <= 40000 && total <= 1800;
  return {ok, os.str()};
}

Outcome s_values() {
  const double expected[] = {0.0548, 2.4016, 1.7635, 0.1459};
  Outcome o;
  std::ostringstream os;
  const auto cases = S_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const PiSquaredForm s = S_poly(cases[i].j, cases[i].r, cases[i].tau);
    const double v = s.value();
    const int sign = s.sign();
    o.ok = o.ok && std::abs(v - expected[i]) < 1e-3 && sign > 0;
    os << "S_" << cases[i].j << "=" << g17(v) << (sign > 0 ? ">0 " : "<=0 ");
  }
  o.ok = o.ok && cases.size() == 4;
  o.detail = os.str();
  return o;
}

Outcome covering_constants() {
  const BoundPair a = ratio_IV_V_at_150(12), b = ratio_V_comp_past_150(12);
  auto near = [](const BoundPair& x, double target) {
    return std::abs(x.lo().to_double() - target) < 1e-4 && std::abs(x.hi().to_double() - target) < 1e-4;
  };
  const bool ok = near(a, 1.01126) && near(b, 1.03148) && a.lo() > Rational(1) && b.lo() > Rational(1);
  return {ok, "IV/V at 150 in [" + g17(a.lo().to_double()) + ", " + g17(a.hi().to_double()) + "], V/comp in [" +
                  g17(b.lo().to_double()) + ", " + g17(b.hi().to_double()) + "]"};
}

Outcome g_identities() {
  Outcome o;
  std::ostringstream os;
  const double w0 = omega0();
  o.ok = std::abs(w0 - 0.108998) < 1e-6;
  os << "omega0=" << g17(w0);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double lam : {1.0, 7.3, 150.0}) {
    const double mid = G(lam, lam / 2);
    const double integral = ts.integrate([lam](double z) { return G(lam, z); }, 0.0, lam, 1e-14);
    const double rel = std::abs(integral - lam * lam / 8) / (lam * lam / 8);
    o.ok = o.ok && std::abs(mid - w0 * lam) < 1e-6 && rel < 1e-9;
    os << " | lam=" << lam << " G(lam/2)-w0*lam=" << g17(mid - w0 * lam) << " int rel.err=" << g17(rel);
  }
  o.detail = os.str();
  return o;
}

Outcome floor_sum_suites() {
  Outcome o;
  std::ostringstream os;
  const SuiteResult rs[] = {suite_concave(kDefaultSeed, 10000), suite_lipschitz_drop(kDefaultSeed, 10000),
                            suite_convex(kDefaultSeed, 10000), suite_convex_improved(kDefaultSeed, 10000)};
  for (const SuiteResult& r : rs) {
    o.ok = o.ok && r.ok() && r.instances >= 10000;
    os << r.name << " " << r.instances << "/" << r.violations << "v; ";
    if (!r.ok()) os << "[" << r.first_failure << "] ";
  }
  const SuiteResult lattice = suite_lattice(kDefaultSeed, 1000);
  o.ok = o.ok && lattice.ok() && lattice.instances >= 1000;
  os << "lattice " << lattice.instances << "/" << lattice.violations << " mismatches";
  o.detail = os.str();
  return o;
}

Outcome polya_desk() {
  std::int64_t points = 0, polya = 0, chain = 0, cylinder = 0;
  std::string first;
  for (int j = 1; j <= 9; ++j) {
    const Rational rq(j, 10);
    const double r = rq.to_double();
    const double h = cylinder_height(r);
    for (int i = 1; i <= 160; ++i) {
      const Rational lq(i, 4), mq = rq * lq;
      const double lam = lq.to_double(), mu = mq.to_double();
      const std::int64_t n = count_annulus(r, lam);
      ++points;
      const bool a = Rational(static_cast<long>(n)) < (Rational(1) - rq * rq) * lq * lq / Rational(4);
      const double p = P(lam, mu);
      const Rational pb = P_bar(lq, mq);
      const bool b = static_cast<double>(n) <= p + 1e-9 && p <= pb.to_double() + 1e-9;
      const bool c = n <= count_cylinder(h, lam);
      polya += !a;
      chain += !b;
      cylinder += !c;
      if ((!a || !b || !c) && first.empty()) first = " first at r=" + rq.to_string() + " lambda=" + lq.to_string();
    }
  }
  return {polya == 0 && chain == 0 && cylinder == 0,
          std::to_string(points) + " points, Polya violations=" + std::to_string(polya) +
              ", N<=P<=P_bar violations=" + std::to_string(chain) + ", cylinder violations=" + std::to_string(cylinder) +
              first};
}

Outcome disk_bound() {
  const double w0 = omega0();
  std::int64_t bad = 0, points = 0;
  double worst = 1e300;
  for (int i = 1; i <= 600; ++i) {
    const double lam = i / 10.0;
    const double slack = lam * lam / 4 - std::floor(w0 * lam) / 2 - static_cast<double>(count_disk(lam));
    ++points;
    bad += !(slack > 0);
    worst = std::min(worst, slack);
  }
  return {bad == 0, std::to_string(points) + " points, violations=" + std::to_string(bad) + ", min slack=" + g17(worst)};
}

Outcome phase_sandwiches() {
  Outcome o;
  std::ostringstream os;
  const SuiteResult rs[] = {suite_phase_bounds(kDefaultSeed, 5000), suite_phase_difference(kDefaultSeed, 5000),
                            suite_zero_counts(kDefaultSeed, 500)};
  for (const SuiteResult& r : rs) {
    o.ok = o.ok && r.ok();
    os << r.name << " " << r.instances << "/" << r.violations << "v; ";
    if (!r.ok()) os << "[" << r.first_failure << "] ";
  }
  o.ok = o.ok && rs[0].instances >= 5000 && rs[1].instances >= 5000 && rs[2].instances >= 500;
  o.detail = os.str();
  return o;
}

Outcome coverage() {
  const CoverageReport rep = coverage_check(Rational(1, 4), Rational(400));
  std::string w;
  if (!rep.witnesses.empty()) w = " first uncovered (" + rep.witnesses[0].first.to_string() + ", " + rep.witnesses[0].second.to_string() + ")";
  return {rep.ok(), std::to_string(rep.points) + " points, uncovered=" + std::to_string(rep.uncovered) +
                        ", ordering failures=" + std::to_string(rep.ordering_failures) + " of " +
                        std::to_string(rep.ordering_checks) + w};
}

}  // namespace

int main() {
  report(1, "end-to-end certification", certification);
  report(2, "S_j values and signs", s_values);
  report(3, "covering constants", covering_constants);
  report(4, "G identities", g_identities);
  report(5, "floor-sum suites", floor_sum_suites);
  report(6, "Polya inequality at desk scale", polya_desk);
  report(7, "improved disk bound", disk_bound);
  report(8, "phase sandwiches and zero counts", phase_sandwiches);
  report(9, "coverage grid", coverage);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
