#include "polya/certifier.hpp"

#include "polya/floorsum.hpp"

#include "json.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace polya {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormatName = "polya-annulus-certificate";
// A strip never needs anywhere near this many anchors; past it the sweep is stuck.
constexpr int kMaxStepsPerStrip = 100000;

// Rounding slack for the short-rational simplification: 1/1000 of the room
// between the exact value and the constraint it must respect.
const Rational kSlack(1, 1000);

Rational strip_cap(const Rational& lambda_hi, const std::optional<Rational>& mu_cap, const SweepConfig& config) {
  Rational z = config.zeta_slope * lambda_hi;
  if (mu_cap && *mu_cap < z) z = *mu_cap;
  return z;
}

std::string fmt(const Rational& q) { return q.to_string(); }

Rational rat_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw FormatError(std::string("missing rational field '") + key + "'");
  try {
    return parse_rational(j[key].get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad rational in '") + key + "': " + e.what());
  }
}

template <class T>
T plain_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j[key].get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

void SweepConfig::validate() const {
  const Rational zero(0), one(1);
  if (!(zero < alpha && alpha < one)) throw DomainError("alpha must lie in (0, 1)");
  if (!(zero < beta && beta < one)) throw DomainError("beta must lie in (0, 1)");
  if (!(zero < zeta_slope && zeta_slope < one)) throw DomainError("zeta_slope must lie in (0, 1)");
  if (!(zero < lambda_stop && lambda_stop < lambda_start)) throw DomainError("requires 0 < lambda_stop < lambda_start");
  if (precision < 1 || precision > 40) throw DomainError("precision must lie in 1..40");
}

bool operator==(const SweepConfig& a, const SweepConfig& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.precision == b.precision && a.lambda_start == b.lambda_start &&
         a.lambda_stop == b.lambda_stop && a.zeta_slope == b.zeta_slope && a.retry_precision == b.retry_precision;
}

Rational Certificate::next_lambda() const { return strips.empty() ? config.lambda_start : strips.back().lambda_lo; }

bool operator==(const Certificate& a, const Certificate& b) {
  return a.config == b.config && a.strips == b.strips && a.stats == b.stats && a.complete == b.complete &&
         a.mu_cap == b.mu_cap && a.error == b.error;
}

// ---------------------------------------------------------------------------

Rational strip_edge(const Rational& lambda0, const Rational& mu0, const Rational& p0, const SweepConfig& config) {
  const Rational big_lambda = sqrt_bounds(mu0 * mu0 + Rational(4) * p0, config.precision).hi();
  const Rational raw = config.alpha * big_lambda + (Rational(1) - config.alpha) * lambda0;
  if (!(raw < lambda0)) throw MarginError("strip edge does not move left of the anchor", lambda0, mu0);
  return simplest_between(raw, raw + (lambda0 - raw) * kSlack);
}

Rational next_mu(const Rational& lambda1, const Rational& mu0, const Rational& p0, const SweepConfig& config) {
  const Rational rad = lambda1 * lambda1 - Rational(4) * p0;
  if (!(rad > mu0 * mu0)) throw MarginError("anchor lies outside the hyperbola at the strip edge", lambda1, mu0);
  const Rational m = sqrt_bounds(rad, config.precision).lo();
  const Rational raw = config.beta * m + (Rational(1) - config.beta) * mu0;
  if (!(raw > mu0)) throw ProgressError("mu does not advance above " + fmt(mu0));
  return simplest_between(raw - (raw - mu0) * kSlack, raw);
}

CertRect rect_from_point(const Rational& lambda0, const Rational& mu0, const Rational& p0, const SweepConfig& config) {
  CertRect r;
  r.lambda_hi = lambda0;
  r.mu_lo = mu0;
  r.p = p0;
  r.anchor_lambda = lambda0;
  r.anchor_mu = mu0;
  if (p0.is_zero()) {
    r.kind = CertRect::Kind::Triangle;
    return r;
  }
  if (!(lambda0 * lambda0 - mu0 * mu0 > Rational(4) * p0))
    throw MarginError("non-positive margin at (" + fmt(lambda0) + ", " + fmt(mu0) + ")", lambda0, mu0);
  r.lambda_lo = strip_edge(lambda0, mu0, p0, config);
  r.mu_hi = next_mu(r.lambda_lo, mu0, p0, config);
  if (!(r.lambda_lo * r.lambda_lo - r.mu_hi * r.mu_hi > Rational(4) * p0))
    throw MarginError("rectangle corner leaves the hyperbola", lambda0, mu0);
  return r;
}

Strip run_strip(const Rational& lambda_hi, const std::optional<Rational>& mu_cap, const SweepConfig& config,
                std::int64_t& evaluations, int precision) {
  SweepConfig cfg = config;
  cfg.precision = precision;
  const Rational top = strip_cap(lambda_hi, mu_cap, cfg);
  const Rational four(4);

  Strip strip;
  strip.lambda_hi = lambda_hi;
  strip.precision = precision;
  std::optional<Rational> lambda1;
  Rational mu(0);

  for (int step = 0;; ++step) {
    if (step == kMaxStepsPerStrip) throw ProgressError("strip at lambda=" + fmt(lambda_hi) + " does not terminate");
    const Rational p = P_bar(lambda_hi, mu, precision, cfg.jobs);
    ++evaluations;
    if (p.is_zero()) {
      strip.rects.push_back(rect_from_point(lambda_hi, mu, p, cfg));
      strip.zero_stop = true;
      break;
    }
    if (!(lambda_hi * lambda_hi - mu * mu > four * p))
      throw MarginError("non-positive margin at (" + fmt(lambda_hi) + ", " + fmt(mu) + "), p=" + fmt(p), lambda_hi, mu);
    const Rational edge = strip_edge(lambda_hi, mu, p, cfg);
    if (!lambda1 || edge > *lambda1) lambda1 = edge;
    const Rational mu1 = next_mu(*lambda1, mu, p, cfg);
    if (!(*lambda1 * *lambda1 - mu1 * mu1 > four * p))
      throw MarginError("rectangle corner leaves the hyperbola at (" + fmt(lambda_hi) + ", " + fmt(mu) + ")", lambda_hi,
                        mu);

    CertRect r;
    r.lambda_hi = lambda_hi;
    r.mu_lo = mu;
    r.mu_hi = mu1;
    r.p = p;
    r.anchor_lambda = lambda_hi;
    r.anchor_mu = mu;
    strip.rects.push_back(std::move(r));
    mu = mu1;
    if (mu > top) break;
  }

  // All rectangles of a strip share the narrowest width found.
  strip.lambda_lo = lambda1 ? *lambda1 : Rational(0);
  for (auto& r : strip.rects)
    if (r.kind == CertRect::Kind::Rectangle) r.lambda_lo = strip.lambda_lo;
  return strip;
}

Certificate run_cover(const SweepConfig& config, const StripCallback& on_strip) {
  config.validate();
  Certificate cert;
  cert.config = config;
  return resume_cover(std::move(cert), on_strip);
}

Certificate resume_cover(Certificate cert, const StripCallback& on_strip) {
  cert.config.validate();
  if (cert.complete) return cert;
  cert.error.clear();
  int done_here = 0;
  while (!(cert.next_lambda() < cert.config.lambda_stop)) {
    if (cert.config.max_strips > 0 && done_here == cert.config.max_strips) return cert;
    const Rational lam = cert.next_lambda();
    std::int64_t evals = 0;
    Strip strip;
    try {
      strip = run_strip(lam, cert.mu_cap, cert.config, evals, cert.config.precision);
    } catch (const MarginError& e) {
      if (!cert.config.retry_precision) {
        cert.stats.evaluations += evals;
        cert.error = std::string("MarginError: ") + e.what();
        return cert;
      }
      try {
        strip = run_strip(lam, cert.mu_cap, cert.config, evals, cert.config.precision + 6);
      } catch (const std::exception& e2) {
        cert.stats.evaluations += evals;
        cert.error = std::string("MarginError after retry: ") + e2.what();
        return cert;
      }
    } catch (const ProgressError& e) {
      cert.stats.evaluations += evals;
      cert.error = std::string("ProgressError: ") + e.what();
      return cert;
    }
    cert.stats.evaluations += evals;
    ++cert.stats.columns;
    if (strip.zero_stop) {
      const Rational& star = strip.rects.back().mu_lo;
      if (!cert.mu_cap || star < *cert.mu_cap) cert.mu_cap = star;
    }
    cert.strips.push_back(std::move(strip));
    ++done_here;
    cert.stats.final_lambda = cert.next_lambda();
    if (on_strip) on_strip(cert);
  }
  cert.complete = true;
  cert.stats.final_lambda = cert.next_lambda();
  return cert;
}

// ---------------------------------------------------------------------------

CertVerdict verify_certificate(const Certificate& cert, unsigned jobs) {
  CertVerdict v;
  auto fail = [&v](const std::string& why) {
    v.ok = false;
    v.failure = why;
    return v;
  };
  try {
    cert.config.validate();
  } catch (const std::exception& e) {
    return fail(std::string("bad config: ") + e.what());
  }
  if (!cert.complete) return fail("certificate is partial" + (cert.error.empty() ? "" : " (" + cert.error + ")"));
  if (cert.strips.empty()) return fail("no strips");

  const Rational four(4);
  std::optional<Rational> cap;
  Rational expect_hi = cert.config.lambda_start;
  for (std::size_t s = 0; s < cert.strips.size(); ++s) {
    const Strip& st = cert.strips[s];
    const std::string where = "strip " + std::to_string(s);
    if (st.lambda_hi != expect_hi) return fail(where + ": lambda_hi " + fmt(st.lambda_hi) + " does not abut " + fmt(expect_hi));
    if (!(st.lambda_lo < st.lambda_hi) || st.lambda_lo.sign() < 0) return fail(where + ": empty lambda interval");
    if (st.rects.empty()) return fail(where + ": no pieces");
    if (st.precision < 1 || st.precision > kPiStoredDigits - 2) return fail(where + ": bad precision");
    const Rational top = strip_cap(st.lambda_hi, cap, cert.config);

    Rational mu(0);
    bool closed = false;
    for (std::size_t i = 0; i < st.rects.size(); ++i) {
      const CertRect& r = st.rects[i];
      const std::string at = where + " piece " + std::to_string(i) + " anchored at (" + fmt(r.anchor_lambda) + ", " +
                             fmt(r.anchor_mu) + ")";
      if (closed) return fail(at + ": piece after the strip was closed");
      if (r.anchor_lambda != r.lambda_hi || r.anchor_mu != r.mu_lo) return fail(at + ": anchor is not the bottom-right corner");
      if (r.lambda_hi != st.lambda_hi) return fail(at + ": lambda_hi differs from the strip");
      if (r.mu_lo != mu) return fail(at + ": gap or overlap in mu, expected mu_lo " + fmt(mu));
      const Rational fresh = P_bar(r.anchor_lambda, r.anchor_mu, st.precision, jobs);
      ++v.evaluations;
      ++v.rects_checked;
      if (r.p < fresh) return fail(at + ": p=" + fmt(r.p) + " is below P_bar=" + fmt(fresh));
      if (r.kind == CertRect::Kind::Triangle) {
        if (!r.p.is_zero() || !fresh.is_zero()) return fail(at + ": triangle without a zero count");
        if (!cap || r.mu_lo < *cap) cap = r.mu_lo;
        closed = true;
        continue;
      }
      if (r.lambda_lo != st.lambda_lo) return fail(at + ": lambda_lo differs from the strip");
      if (!(r.mu_lo < r.mu_hi)) return fail(at + ": empty mu interval");
      if (!(r.lambda_lo * r.lambda_lo - r.mu_hi * r.mu_hi > four * r.p))
        return fail(at + ": corner (" + fmt(r.lambda_lo) + ", " + fmt(r.mu_hi) + ") violates the margin for p=" + fmt(r.p));
      mu = r.mu_hi;
    }
    if (!closed && mu < top) return fail(where + ": pieces stop at mu=" + fmt(mu) + " below the boundary " + fmt(top));
    expect_hi = st.lambda_lo;
  }
  if (!(expect_hi < cert.config.lambda_stop))
    return fail("strips end at lambda=" + fmt(expect_hi) + ", not below " + fmt(cert.config.lambda_stop));
  return v;
}

// ---------------------------------------------------------------------------

void write_certificate(std::ostream& os, const Certificate& cert) {
  const SweepConfig& c = cert.config;
  Json header;
  header["kind"] = "header";
  header["format"] = kFormatName;
  header["version"] = Certificate::kFormatVersion;
  header["config"] = {{"alpha", fmt(c.alpha)},
                      {"beta", fmt(c.beta)},
                      {"precision", c.precision},
                      {"lambda_start", fmt(c.lambda_start)},
                      {"lambda_stop", fmt(c.lambda_stop)},
                      {"zeta_slope", fmt(c.zeta_slope)},
                      {"retry_precision", c.retry_precision}};
  os << header.dump() << '\n';
  for (std::size_t s = 0; s < cert.strips.size(); ++s) {
    const Strip& st = cert.strips[s];
    Json js;
    js["kind"] = "strip";
    js["index"] = s;
    js["lambda_hi"] = fmt(st.lambda_hi);
    js["lambda_lo"] = fmt(st.lambda_lo);
    js["precision"] = st.precision;
    js["stop"] = st.zero_stop ? "zero" : "boundary";
    os << js.dump() << '\n';
    for (const CertRect& r : st.rects) {
      Json jr;
      const bool tri = r.kind == CertRect::Kind::Triangle;
      jr["kind"] = tri ? "triangle" : "rectangle";
      jr["strip"] = s;
      jr["lambda_lo"] = fmt(r.lambda_lo);
      jr["lambda_hi"] = fmt(r.lambda_hi);
      jr["mu_lo"] = fmt(r.mu_lo);
      if (!tri) jr["mu_hi"] = fmt(r.mu_hi);
      jr["p"] = fmt(r.p);
      jr["anchor_lambda"] = fmt(r.anchor_lambda);
      jr["anchor_mu"] = fmt(r.anchor_mu);
      os << jr.dump() << '\n';
    }
  }
  Json tail;
  tail["kind"] = "summary";
  tail["status"] = cert.complete ? "complete" : "partial";
  tail["columns"] = cert.stats.columns;
  tail["evaluations"] = cert.stats.evaluations;
  tail["final_lambda"] = fmt(cert.stats.final_lambda);
  tail["mu_cap"] = cert.mu_cap ? Json(fmt(*cert.mu_cap)) : Json(nullptr);
  tail["error"] = cert.error;
  os << tail.dump() << '\n';
}

std::string serialize_certificate(const Certificate& cert) {
  std::ostringstream os;
  write_certificate(os, cert);
  return os.str();
}

Certificate read_certificate(std::istream& is) {
  Certificate cert;
  std::string line;
  int lineno = 0;
  bool have_header = false, have_summary = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (have_summary) throw FormatError("line " + std::to_string(lineno) + ": content after the summary");
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
    const auto kind = plain_field<std::string>(j, "kind");
    if (!have_header) {
      if (kind != "header") throw FormatError("first record must be the header");
      if (plain_field<std::string>(j, "format") != kFormatName) throw FormatError("unknown format");
      if (plain_field<int>(j, "version") != Certificate::kFormatVersion) throw FormatError("unsupported version");
      const Json& c = j.at("config");
      cert.config.alpha = rat_field(c, "alpha");
      cert.config.beta = rat_field(c, "beta");
      cert.config.precision = plain_field<int>(c, "precision");
      cert.config.lambda_start = rat_field(c, "lambda_start");
      cert.config.lambda_stop = rat_field(c, "lambda_stop");
      cert.config.zeta_slope = rat_field(c, "zeta_slope");
      cert.config.retry_precision = plain_field<bool>(c, "retry_precision");
      have_header = true;
      continue;
    }
    if (kind == "strip") {
      if (plain_field<std::size_t>(j, "index") != cert.strips.size()) throw FormatError("strips out of order");
      Strip st;
      st.lambda_hi = rat_field(j, "lambda_hi");
      st.lambda_lo = rat_field(j, "lambda_lo");
      st.precision = plain_field<int>(j, "precision");
      const auto stop = plain_field<std::string>(j, "stop");
      if (stop != "zero" && stop != "boundary") throw FormatError("bad stop mode '" + stop + "'");
      st.zero_stop = stop == "zero";
      cert.strips.push_back(std::move(st));
    } else if (kind == "rectangle" || kind == "triangle") {
      if (cert.strips.empty() || plain_field<std::size_t>(j, "strip") != cert.strips.size() - 1)
        throw FormatError("line " + std::to_string(lineno) + ": piece outside its strip");
      CertRect r;
      r.kind = kind == "triangle" ? CertRect::Kind::Triangle : CertRect::Kind::Rectangle;
      r.lambda_lo = rat_field(j, "lambda_lo");
      r.lambda_hi = rat_field(j, "lambda_hi");
      r.mu_lo = rat_field(j, "mu_lo");
      if (r.kind == CertRect::Kind::Rectangle) r.mu_hi = rat_field(j, "mu_hi");
      r.p = rat_field(j, "p");
      r.anchor_lambda = rat_field(j, "anchor_lambda");
      r.anchor_mu = rat_field(j, "anchor_mu");
      cert.strips.back().rects.push_back(std::move(r));
    } else if (kind == "summary") {
      const auto status = plain_field<std::string>(j, "status");
      if (status != "complete" && status != "partial") throw FormatError("bad status '" + status + "'");
      cert.complete = status == "complete";
      cert.stats.columns = plain_field<std::int64_t>(j, "columns");
      cert.stats.evaluations = plain_field<std::int64_t>(j, "evaluations");
      cert.stats.final_lambda = rat_field(j, "final_lambda");
      if (!j.contains("mu_cap")) throw FormatError("missing field 'mu_cap'");
      if (!j["mu_cap"].is_null()) cert.mu_cap = rat_field(j, "mu_cap");
      cert.error = plain_field<std::string>(j, "error");
      have_summary = true;
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown record kind '" + kind + "'");
    }
  }
  if (!have_header) throw FormatError("empty certificate");
  if (!have_summary) throw FormatError("missing summary record");
  return cert;
}

Certificate parse_certificate(const std::string& text) {
  std::istringstream is(text);
  return read_certificate(is);
}

}  // namespace polya
