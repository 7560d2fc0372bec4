#pragma once

// Computer-assisted covering of the computational region
// {5/2 <= lambda <= 150, 0 <= mu <= 22 lambda / 25} by rectangles on which
// the lattice majorant P_bar stays below (lambda^2 - mu^2)/4, plus the
// independent re-check of the emitted certificate.

#include "polya/exactnum.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polya {

/// Non-positive margin at an anchor: the sweep cannot place a rectangle.
class MarginError : public std::runtime_error {
 public:
  MarginError(const std::string& what, Rational lambda, Rational mu)
      : std::runtime_error(what), lambda(std::move(lambda)), mu(std::move(mu)) {}
  Rational lambda;
  Rational mu;
};

/// The next anchor would not lie strictly above the current one.
class ProgressError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed certificate text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  Rational alpha{2, 3};
  Rational beta{99, 100};
  int precision = kDefaultPrecision;
  Rational lambda_start{150};
  Rational lambda_stop{5, 2};
  Rational zeta_slope{22, 25};
  /// Worker threads inside each P_bar evaluation; results do not depend on it.
  unsigned jobs = 1;
  /// On a MarginError, redo the strip once at precision + 6.
  bool retry_precision = false;
  /// Stop after this many strips in one call (0: no limit). Not serialized.
  int max_strips = 0;

  /// Throws DomainError unless alpha, beta in (0,1), lambda_start > lambda_stop > 0,
  /// zeta_slope in (0,1) and 1 <= precision <= 40.
  void validate() const;
  friend bool operator==(const SweepConfig& a, const SweepConfig& b);
};

struct CertRect {
  enum class Kind { Rectangle, Triangle };
  Kind kind = Kind::Rectangle;
  Rational lambda_lo;  // 0 for a triangle
  Rational lambda_hi;
  Rational mu_lo;
  Rational mu_hi;  // unused for a triangle
  Rational p;
  Rational anchor_lambda;
  Rational anchor_mu;

  friend bool operator==(const CertRect&, const CertRect&) = default;
};

struct Strip {
  Rational lambda_hi;
  Rational lambda_lo;
  int precision = kDefaultPrecision;
  /// True when the strip ended on a zero count (last entry is a triangle).
  bool zero_stop = false;
  std::vector<CertRect> rects;

  friend bool operator==(const Strip&, const Strip&) = default;
};

struct SweepStats {
  std::int64_t columns = 0;
  std::int64_t evaluations = 0;
  Rational final_lambda;

  friend bool operator==(const SweepStats&, const SweepStats&) = default;
};

struct Certificate {
  static constexpr int kFormatVersion = 1;

  SweepConfig config;
  std::vector<Strip> strips;
  SweepStats stats;
  bool complete = false;
  /// Cap on mu from the zero-count triangles so far (none: only the slope).
  std::optional<Rational> mu_cap;
  /// Message of the error that stopped a partial run, if any.
  std::string error;

  /// Left edge of the last strip, where a resumed sweep continues.
  Rational next_lambda() const;

  friend bool operator==(const Certificate& a, const Certificate& b);
};

/// Single rectangle [lambda1, lambda0] x [mu0, mu1] anchored at (lambda0, mu0),
/// or the triangle {lambda <= lambda0, mu >= mu0} when p0 = 0. Throws
/// MarginError unless lambda0^2 - mu0^2 > 4 p0 and lambda1^2 - mu1^2 > 4 p0.
CertRect rect_from_point(const Rational& lambda0, const Rational& mu0, const Rational& p0,
                         const SweepConfig& config);

/// Provisional strip edge alpha * sqrt_hi(mu0^2 + 4 p0) + (1 - alpha) lambda0,
/// rounded up to a short rational.
Rational strip_edge(const Rational& lambda0, const Rational& mu0, const Rational& p0, const SweepConfig& config);
/// beta * sqrt_lo(lambda1^2 - 4 p0) + (1 - beta) mu0, rounded down to a short
/// rational that stays above mu0.
Rational next_mu(const Rational& lambda1, const Rational& mu0, const Rational& p0, const SweepConfig& config);

/// One vertical strip starting at (lambda_hi, 0). `evaluations` is incremented
/// per P_bar call.
Strip run_strip(const Rational& lambda_hi, const std::optional<Rational>& mu_cap, const SweepConfig& config,
                std::int64_t& evaluations, int precision);

using StripCallback = std::function<void(const Certificate&)>;

/// Full sweep. Errors are caught and returned as a partial certificate with
/// `error` set; `resume` continues a partial certificate deterministically.
Certificate run_cover(const SweepConfig& config, const StripCallback& on_strip = {});
Certificate resume_cover(Certificate partial, const StripCallback& on_strip = {});

struct CertVerdict {
  bool ok = true;
  std::int64_t rects_checked = 0;
  std::int64_t evaluations = 0;
  std::string failure;  // first failure with a witness

  explicit operator bool() const { return ok; }
};

/// Re-checks a certificate with fresh exact computations: every p is at least
/// P_bar at its anchor, every rectangle lies strictly inside its hyperbola,
/// triangles carry a zero count, and the pieces cover the computational region.
CertVerdict verify_certificate(const Certificate& cert, unsigned jobs = 1);

void write_certificate(std::ostream& os, const Certificate& cert);
std::string serialize_certificate(const Certificate& cert);
Certificate read_certificate(std::istream& is);
Certificate parse_certificate(const std::string& text);

}  // namespace polya
