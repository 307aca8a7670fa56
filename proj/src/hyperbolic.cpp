#include "koenigs/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace koenigs {

bool in_unit_disc(cplx z) { return std::abs(z) < 1.0; }

void require_disc_point(cplx z, const char* what) {
    if (!(std::abs(z) < 1.0))
        throw std::domain_error(std::string(what) + " not in the open unit disc");
}

void require_halfplane_point(cplx w, const char* what) {
    if (!(w.real() > 0.0))
        throw std::domain_error(std::string(what) + " not in the right half-plane");
}

void require_boundary_point(cplx tau) {
    if (std::abs(std::abs(tau) - 1.0) > tol::boundary_unit)
        throw std::domain_error("boundary point must have |tau| = 1");
}

cplx mobius_theta(cplx w, cplx z) {
    require_disc_point(w, "w");
    require_disc_point(z, "z");
    return (w - z) / (1.0 - std::conj(w) * z);
}

double dist_disc(cplx z, cplx w) {
    double r = std::abs(mobius_theta(w, z));
    if (r < tol::coincident) return 0.0;
    return std::atanh(r);
}

double dist_halfplane(cplx w1, cplx w2) {
    require_halfplane_point(w1, "w1");
    require_halfplane_point(w2, "w2");
    double r = std::abs(w1 - w2) / std::abs(w1 + std::conj(w2));
    if (r < tol::coincident) return 0.0;
    return std::atanh(r);
}

// With rho = |w1-w2|/|w1+conj(w2)|, the distance (1/2)log((1+rho)/(1-rho))
// equals log(num+den) - (1/2)log(4 Re w1 Re w2) because
// den^2 - num^2 = 4 Re(w1) Re(w2). Scaling both points by exp(-max log_r)
// removes the overflow without changing the quotient.
double dist_halfplane_logpolar(double log_r1, double phi1, double log_r2, double phi2) {
    const double lmax = std::max(log_r1, log_r2);
    const cplx u1 = std::polar(std::exp(log_r1 - lmax), phi1);
    const cplx u2 = std::polar(std::exp(log_r2 - lmax), phi2);
    const double num = std::abs(u1 - u2);
    const double den = std::abs(u1 + std::conj(u2));
    if (num < tol::coincident * den) return 0.0;
    const double c1 = std::cos(phi1), c2 = std::cos(phi2);
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::domain_error("log-polar point outside the right half-plane");
    return std::log(num + den) - 0.5 * (std::log(4.0 * c1 * c2) - std::abs(log_r1 - log_r2));
}

cplx cayley(cplx tau, cplx z) {
    require_boundary_point(tau);
    require_disc_point(z, "z");
    cplx d = tau - z;
    if (std::abs(d) < tol::coincident)
        throw std::domain_error("Cayley transform pole: z = tau");
    return (tau + z) / d;
}

cplx cayley_inv(cplx tau, cplx w) {
    require_boundary_point(tau);
    return tau * (w - 1.0) / (w + 1.0);
}

bool horocycle_contains(const Horocycle& h, cplx z) {
    double d = std::abs(h.tau - z);
    return d * d < h.radius * (1.0 - std::norm(z));
}

bool stolz_contains(const StolzRegion& s, cplx z) {
    return std::abs(s.tau - z) < s.aperture * (1.0 - std::abs(z));
}

cplx horocycle_center(const Horocycle& h) { return h.tau / (h.radius + 1.0); }

double horocycle_euclidean_radius(const Horocycle& h) {
    return h.radius / (h.radius + 1.0);
}

cplx project_to_diameter(cplx tau, cplx z) {
    return cayley_inv(tau, cplx(std::abs(cayley(tau, z)), 0.0));
}

}  // namespace koenigs
