#pragma once

// Floating-point ground truth for the Bessel phase function and the
// Dirichlet counting functions of the annulus, disk and flat cylinder.
// Nothing here is rigorous; the certifier never calls into this module.
//
// Phase convention: J_nu = M cos(theta), Y_nu = M sin(theta), theta
// continuous and increasing with theta(0+) = -pi/2, so that theta hits
// (k - 1/2) pi exactly at the k-th positive zero of J_nu.

#include <cstdint>
#include <vector>

namespace polya {

/// Number of zeros of J_nu in (0, x].
std::int64_t count_J_zeros(double nu, double x);

/// theta_nu(x) + pi/2, computed without cancellation for small values.
double theta_offset(double nu, double x);
double theta(double nu, double x);

/// Theta_{r,m}(lam) = theta_m(lam) - theta_m(r lam).
double Theta(double r, int m, double lambda);

/// gamma_{lam,mu}(z) = (theta_z(lam) - theta_z(mu)) / pi for real order z.
double gamma_phase(double lambda, double mu, double z);

/// N_r(lam) = sum_{m=0}^{floor(lam)} kappa_m floor(Theta_{r,m}(lam) / pi).
std::int64_t count_annulus(double r, double lambda);

/// L_{r,m}(x) = J_m(x) Y_m(rx) - Y_m(x) J_m(rx).
double crossproduct(double r, int m, double x);
/// Zeros of L_{r,m} in (0, lam], each refined by bisection to 1e-10.
std::vector<double> crossproduct_zeros(double r, int m, double lambda);
std::int64_t count_zeros_crossproduct(double r, int m, double lambda);
/// N_r(lam) from cross-product zero counts instead of phases.
std::int64_t count_annulus_crossproduct(double r, double lambda);

/// Dirichlet counting function of the unit disk: sum kappa_m #{k : j_{m,k} <= lam}.
std::int64_t count_disk(double lambda);

/// #{(n, m) in N x Z : m^2 + pi^2 n^2 / h^2 <= lam^2}.
std::int64_t count_cylinder(double h, double lambda);

/// h_r = (1 - r) / sqrt(r).
double cylinder_height(double r);

}  // namespace polya
