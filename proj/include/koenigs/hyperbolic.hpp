#pragma once

#include <complex>

namespace koenigs {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double boundary_unit = 1e-12;   // |tau|=1 slack
inline constexpr double coincident = 1e-16;      // treat points as equal below this
}  // namespace tol

/// Horocycle E(tau,R) = {z : |tau-z|^2 < R(1-|z|^2)}, tangent to the unit
/// circle at tau. In Euclidean terms a disc of radius R/(R+1).
struct Horocycle {
    cplx tau;
    double radius;  // hyperbolic radius R > 0
};

/// Stolz region S(tau,R) = {z : |tau-z| < R(1-|z|)}, R > 1.
struct StolzRegion {
    cplx tau;
    double aperture;  // R > 1
};

bool in_unit_disc(cplx z);
void require_disc_point(cplx z, const char* what = "point");
void require_halfplane_point(cplx w, const char* what = "point");
void require_boundary_point(cplx tau);

/// Disc automorphism Theta_w(z) = (w - z)/(1 - conj(w) z).
cplx mobius_theta(cplx w, cplx z);

/// Poincare distance in the unit disc.
double dist_disc(cplx z, cplx w);

/// Poincare distance in the right half-plane Re > 0.
double dist_halfplane(cplx w1, cplx w2);

/// Half-plane distance for points given as w = exp(log_r + i*phi).
/// Safe for log_r far beyond the range of exp(); phi in (-pi/2, pi/2).
double dist_halfplane_logpolar(double log_r1, double phi1, double log_r2, double phi2);

/// Cayley transform C_tau(z) = (tau + z)/(tau - z), disc -> right half-plane.
cplx cayley(cplx tau, cplx z);
/// Inverse Cayley transform, half-plane -> disc.
cplx cayley_inv(cplx tau, cplx w);

bool horocycle_contains(const Horocycle& h, cplx z);
bool stolz_contains(const StolzRegion& s, cplx z);

// Euclidean centre/radius of a horocycle.
cplx horocycle_center(const Horocycle& h);
double horocycle_euclidean_radius(const Horocycle& h);

/// Hyperbolic projection of z onto the diameter (-tau, tau).
cplx project_to_diameter(cplx tau, cplx z);

}  // namespace koenigs
