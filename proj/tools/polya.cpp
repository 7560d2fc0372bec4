// polya: certification sweep, certificate verification and the numerical
// checks around Polya's inequality for annuli.

#include "CLI11.hpp"

#include "polya/besseloracle.hpp"
#include "polya/boundfns.hpp"
#include "polya/certifier.hpp"
#include "polya/floorsum.hpp"
#include "polya/regions.hpp"
#include "polya/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace polya;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rat(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

std::string num(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Certificate load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_certificate(in);
}

void save(const std::string& path, const Certificate& cert) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw UsageError("cannot write " + path);
    write_certificate(out, cert);
    if (!out) throw UsageError("write failed for " + path);
  }
  std::filesystem::rename(tmp, path);
}

struct Globals {
  int precision = kDefaultPrecision;
  unsigned jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

// --- certify ---------------------------------------------------------------

struct CertifyArgs {
  std::string alpha = "2/3", beta = "99/100", lambda_start = "150", lambda_stop = "5/2";
  std::string resume;
  bool retry = false;
  int max_strips = 0;
  int checkpoint_every = 10;
};

int cmd_certify(const Globals& g, const CertifyArgs& a) {
  const std::string out = g.out.empty() ? "certificate.jsonl" : g.out;
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t since_save = 0;
  auto checkpoint = [&](const Certificate& c) {
    if (a.checkpoint_every > 0 && ++since_save % a.checkpoint_every == 0) save(out, c);
  };

  Certificate cert;
  if (!a.resume.empty()) {
    Certificate partial = load(a.resume);
    partial.config.jobs = g.jobs;
    partial.config.max_strips = a.max_strips;
    std::cerr << "resuming at lambda=" << partial.next_lambda() << " after " << partial.strips.size() << " strips\n";
    cert = resume_cover(std::move(partial), checkpoint);
  } else {
    SweepConfig c;
    c.alpha = rat(a.alpha, "--alpha");
    c.beta = rat(a.beta, "--beta");
    c.lambda_start = rat(a.lambda_start, "--lambda-start");
    c.lambda_stop = rat(a.lambda_stop, "--lambda-stop");
    c.precision = g.precision;
    c.jobs = g.jobs;
    c.retry_precision = a.retry;
    c.max_strips = a.max_strips;
    try {
      c.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    cert = run_cover(c, checkpoint);
  }
  save(out, cert);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "columns=" << cert.stats.columns << " evals=" << cert.stats.evaluations
            << " final=" << cert.stats.final_lambda << '\n';
  std::cout << "status=" << (cert.complete ? "complete" : "partial") << " certificate=" << out << '\n';
  std::cout << "wall_seconds=" << num(secs) << '\n';
  if (!cert.error.empty()) {
    std::cerr << "error: " << cert.error << '\n';
    return kInternal;
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& path) {
  Certificate cert;
  try {
    cert = load(path);
  } catch (const FormatError& e) {
    std::cout << "FAIL malformed certificate: " << e.what() << '\n';
    return kFail;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const CertVerdict v = verify_certificate(cert, g.jobs);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.ok) {
    std::cout << "FAIL " << v.failure << '\n';
    return kFail;
  }
  std::cout << "PASS pieces=" << v.rects_checked << " strips=" << cert.strips.size()
            << " final=" << cert.stats.final_lambda << '\n';
  std::cout << "wall_seconds=" << num(secs) << '\n';
  return kOk;
}

// --- classify / count / bounds ---------------------------------------------

int cmd_classify(const std::string& lambda_text, const std::string& mu_text) {
  const Rational lam = rat(lambda_text, "--lambda"), mu = rat(mu_text, "--mu");
  LabelSet s;
  try {
    s = classify(lam, mu);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::cout << "lambda=" << lam << " mu=" << mu << " labels=" << s.to_string() << '\n';
  return kOk;
}

int cmd_count(const Globals& g, const std::string& r_text, const std::string& lambda_text) {
  const Rational rq = rat(r_text, "--r"), lq = rat(lambda_text, "--lambda");
  if (!(rq.sign() > 0 && rq < Rational(1))) throw UsageError("--r must lie in (0, 1)");
  if (lq.sign() <= 0) throw UsageError("--lambda must be positive");
  const Rational mq = rq * lq;
  const double r = rq.to_double(), lam = lq.to_double(), mu = mq.to_double();
  const std::int64_t n = count_annulus(r, lam);
  const Rational bound = (Rational(1) - rq * rq) * lq * lq / Rational(4);
  std::cout << "r=" << rq << " lambda=" << lq << " mu=" << mq << '\n';
  std::cout << "N=" << n << '\n';
  std::cout << "polya_bound=" << num(bound.to_double()) << " exact=" << bound << '\n';
  std::cout << "P=" << num(P(lam, mu)) << '\n';
  std::cout << "P_bar=" << P_bar(lq, mq, g.precision, g.jobs) << '\n';
  std::cout << "cylinder=" << count_cylinder(cylinder_height(r), lam) << '\n';
  std::cout << "polya_holds=" << (Rational(static_cast<long>(n)) < bound ? "yes" : "no") << '\n';
  std::cout << "labels=" << classify(lq, mq).to_string() << '\n';
  return kOk;
}

int cmd_bounds(const Globals& g, const std::string& lambda_text, const std::string& mu_text, const std::string& z_text) {
  const Rational lq = rat(lambda_text, "--lambda"), mq = rat(mu_text, "--mu"), zq = rat(z_text, "--z");
  if (!(mq.sign() > 0 && mq < lq)) throw UsageError("requires 0 < mu < lambda");
  if (zq.sign() < 0) throw UsageError("--z must be non-negative");
  const double lam = lq.to_double(), mu = mq.to_double(), z = zq.to_double();
  const Verified lo = Verified::lower(g.precision), hi = Verified::upper(g.precision);
  std::cout << "G=" << num(G(lam, z)) << " [" << G(lq, zq, lo) << ", " << G(lq, zq, hi) << "]\n";
  std::cout << "F=" << num(F(mu, z)) << " [" << F(mq, zq, lo) << ", " << F(mq, zq, hi) << "]\n";
  if (z < mu) std::cout << "H=" << num(H(mu, z)) << '\n';
  std::cout << "Phi=" << num(Phi(lam, mu, z)) << '\n';
  std::cout << "gamma=" << num(gamma_phase(lam, mu, z)) << '\n';
  std::cout << "omega0=" << num(omega0()) << '\n';
  std::cout << "P=" << num(P(lam, mu)) << " P_bar=" << P_bar(lq, mq, g.precision, g.jobs) << '\n';
  return kOk;
}

// --- theorems / coverage ---------------------------------------------------

int cmd_theorems(const Globals& g, int n) {
  if (n < 20) throw UsageError("--n must be at least 20");
  bool ok = true;
  for (const SuiteResult& r : run_all_suites(g.seed, n)) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " instances=" << r.instances
              << " violations=" << r.violations << " rejected=" << r.rejected << '\n';
    if (!r.ok()) {
      std::cout << "  " << r.first_failure << '\n';
      ok = false;
    }
  }
  return ok ? kOk : kFail;
}

int cmd_coverage(const std::string& step_text, const std::string& max_text) {
  const Rational step = rat(step_text, "--step"), top = rat(max_text, "--lambda-max");
  if (step.sign() <= 0 || top.sign() <= 0) throw UsageError("--step and --lambda-max must be positive");
  const CoverageReport rep = coverage_check(step, top);
  std::cout << "points=" << rep.points << " uncovered=" << rep.uncovered << " ordering_checks=" << rep.ordering_checks
            << " ordering_failures=" << rep.ordering_failures << '\n';
  for (const auto& [l, m] : rep.witnesses) std::cout << "  uncovered lambda=" << l << " mu=" << m << '\n';
  if (!rep.first_ordering_failure.empty()) std::cout << "  " << rep.first_ordering_failure << '\n';
  const BoundPair a = ratio_IV_V_at_150(12), b = ratio_V_comp_past_150(12);
  std::cout << "ratio_IV_V_150=" << num(a.lo().to_double()) << " ratio_V_comp_150=" << num(b.lo().to_double()) << '\n';
  return rep.ok() ? kOk : kFail;
}

// --- plotdata --------------------------------------------------------------

struct PlotArgs {
  std::string figure;
  double lambda = 40, mu = 25;
  int samples = 400;
  std::string cert;
};

void plot_region_grid(int samples) {
  std::cout << "r,eta_I,eta_II,eta_III_minus,eta_III_plus,eta_IV,eta_V\n";
  const double r3 = 1 / std::sqrt(200.0);
  for (int i = 1; i < samples; ++i) {
    const double r = static_cast<double>(i) / samples;
    const double e4 = r < 0.1 ? eta_IV(r) : NAN;
    std::cout << num(r) << ',' << num(eta_I(r)) << ',' << num(eta_II(r)) << ','
              << (r <= r3 ? num(eta_III_minus(r)) : "") << ',' << (r <= r3 ? num(eta_III_plus(r)) : "") << ','
              << num(e4) << ',' << num(eta_V(r)) << '\n';
  }
}

void plot_bounds(double lam, double mu, int samples) {
  if (!(0 < mu && mu < lam)) throw UsageError("requires 0 < mu < lambda");
  std::cout << "z,Phi_plus_H,G_plus_quarter,gamma,G_minus_F\n";
  for (int i = 0; i <= samples; ++i) {
    const double z = lam * i / samples;
    const double ph = z < mu ? Phi(lam, mu, z) + H(mu, z) : NAN;
    std::cout << num(z) << ',' << num(ph) << ',' << num(G(lam, z) + 0.25) << ','
              << num(gamma_phase(lam, mu, z)) << ','
              << num(G(lam, z) - F(mu, z)) << '\n';
  }
}

void plot_strip_trace(const std::string& path) {
  if (path.empty()) throw UsageError("strip-trace needs --cert");
  const Certificate cert = load(path);
  std::cout << "k,lambda_k,lambda_k_exact,width,pieces,stop\n";
  for (std::size_t k = 0; k < cert.strips.size(); ++k) {
    const Strip& s = cert.strips[k];
    std::cout << k << ',' << num(s.lambda_hi.to_double()) << ',' << s.lambda_hi << ','
              << num((s.lambda_hi - s.lambda_lo).to_double()) << ',' << s.rects.size() << ','
              << (s.zero_stop ? "zero" : "boundary") << '\n';
  }
}

int cmd_plotdata(const PlotArgs& a) {
  if (a.samples < 2) throw UsageError("--samples must be at least 2");
  if (a.figure == "region-grid")
    plot_region_grid(a.samples);
  else if (a.figure == "bounds-GFH")
    plot_bounds(a.lambda, a.mu, a.samples);
  else if (a.figure == "strip-trace")
    plot_strip_trace(a.cert);
  else
    throw UsageError("unknown figure '" + a.figure + "' (region-grid, bounds-GFH, strip-trace)");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polya's inequality for annuli: certification sweep and numerical checks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "Decimal digits of the rational enclosures")->check(CLI::Range(1, 40));
  app.add_option("--jobs", g.jobs, "Worker threads inside each P_bar evaluation")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "Seed for the random suites");
  app.add_option("--out", g.out, "Output path");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Run the covering sweep and write a certificate");
  certify->add_option("--alpha", ca.alpha);
  certify->add_option("--beta", ca.beta);
  certify->add_option("--lambda-start", ca.lambda_start);
  certify->add_option("--lambda-stop", ca.lambda_stop);
  certify->add_option("--resume", ca.resume, "Continue a partial certificate");
  certify->add_flag("--retry-precision", ca.retry, "Retry a failing strip once at precision + 6");
  certify->add_option("--max-strips", ca.max_strips, "Stop after this many strips")->check(CLI::NonNegativeNumber);
  certify->add_option("--checkpoint-every", ca.checkpoint_every, "Rewrite the output every N strips (0: only at the end)");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("certificate", verify_path)->required();

  std::string cl_lambda, cl_mu;
  auto* cls = app.add_subcommand("classify", "Regions containing (lambda, mu)");
  cls->add_option("--lambda", cl_lambda)->required();
  cls->add_option("--mu", cl_mu)->required();

  std::string co_r, co_lambda;
  auto* count = app.add_subcommand("count", "Eigenvalue count of the annulus against its bounds");
  count->add_option("--r", co_r)->required();
  count->add_option("--lambda", co_lambda)->required();

  std::string bo_lambda, bo_mu, bo_z;
  auto* bounds = app.add_subcommand("bounds", "Bound functions at one point");
  bounds->add_option("--lambda", bo_lambda)->required();
  bounds->add_option("--mu", bo_mu)->required();
  bounds->add_option("--z", bo_z)->required();

  int th_n = 10000;
  auto* theorems = app.add_subcommand("theorems", "Run the seeded property suites");
  theorems->add_option("--n", th_n, "Instances per suite");

  std::string cov_step = "1/4", cov_max = "400";
  auto* coverage = app.add_subcommand("coverage", "Grid check that the regions cover the parameter set");
  coverage->add_option("--step", cov_step);
  coverage->add_option("--lambda-max", cov_max);

  PlotArgs pa;
  auto* plot = app.add_subcommand("plotdata", "CSV data for plots");
  plot->add_option("--figure", pa.figure)->required();
  plot->add_option("--lambda", pa.lambda);
  plot->add_option("--mu", pa.mu);
  plot->add_option("--samples", pa.samples);
  plot->add_option("--cert", pa.cert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*certify) return cmd_certify(g, ca);
    if (*verify) return cmd_verify(g, verify_path);
    if (*cls) return cmd_classify(cl_lambda, cl_mu);
    if (*count) return cmd_count(g, co_r, co_lambda);
    if (*bounds) return cmd_bounds(g, bo_lambda, bo_mu, bo_z);
    if (*theorems) return cmd_theorems(g, th_n);
    if (*coverage) return cmd_coverage(cov_step, cov_max);
    if (*plot) return cmd_plotdata(pa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "malformed certificate: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
