#pragma once

// Seeded random property suites: generated instances of the floor-sum
// inequalities, lattice-count equivalence of T, and the phase-function
// sandwiches against the Bessel oracle. Shared by the test binaries and the
// `theorems` command.

#include <cstdint>
#include <string>
#include <vector>

namespace polya {

struct SuiteResult {
  std::string name;
  std::int64_t instances = 0;   // instances whose hypotheses held and were checked
  std::int64_t violations = 0;  // conclusion failed
  std::int64_t rejected = 0;    // generator produced an instance the checker refused
  std::string first_failure;

  bool ok() const { return violations == 0 && rejected == 0; }
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Concave g: T(g, a, b) <= integral.
SuiteResult suite_concave(std::uint64_t seed, int n);
/// Decreasing concave Lip_c with a floor drop at a.
SuiteResult suite_lipschitz_drop(std::uint64_t seed, int n);
/// Split-point variant of the Lip_c bound.
SuiteResult suite_split_point(std::uint64_t seed, int n);
/// Non-negative decreasing convex Lip_1/2 with integer g(b).
SuiteResult suite_convex(std::uint64_t seed, int n);
/// Convex Lip_1/2, Lip_1/3 past t, g(b) = 0.
SuiteResult suite_convex_improved(std::uint64_t seed, int n);
/// T(g, a, b) against a direct count of lattice points, plus additivity.
SuiteResult suite_lattice(std::uint64_t seed, int n);

/// F_nu(lam) + 1/4 < theta-offset / pi < G_lam(nu) + 1/4 at random (nu, lam).
SuiteResult suite_phase_bounds(std::uint64_t seed, int n);
/// Bounds on gamma = (theta_z(lam) - theta_z(mu)) / pi at random (lam, mu, z).
SuiteResult suite_phase_difference(std::uint64_t seed, int n);
/// floor(Theta / pi) against the sign scan of the cross-product.
SuiteResult suite_zero_counts(std::uint64_t seed, int n);

/// Every suite above at the given size (split-point runs n/2).
std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int n);

}  // namespace polya
