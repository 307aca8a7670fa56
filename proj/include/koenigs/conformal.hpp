#pragma once

#include <functional>

#include "koenigs/hyperbolic.hpp"

namespace koenigs {

/// Parameters of the half-strip S_{alpha,mu} and its power-map image.
/// beta is the Hoelder conjugate alpha/(alpha-1), c = 1/(mu^{1/alpha} beta),
/// eta = tan(pi/(2 beta)). The strip is {0 < Re z < c, Im z > c/eta}.
struct OmegaParams {
    double alpha;
    double mu;
    double beta;
    double c;
    double eta;

    OmegaParams(double alpha, double mu);
};

/// State of the inverse-orbit system (Q - iP)^beta = t + y0 - i x0.
struct PQState {
    double p;   // bounded component, > 0
    double q;   // unbounded component, > 0
    double t;
    cplx zeta0;
};

/// Power map z -> i(-iz)^beta on the half-strip; principal branch, which
/// continues x -> x^beta from the positive reals.
cplx phi_alpha(const OmegaParams& par, cplx z);
/// Inverse of phi_alpha on its image.
cplx phi_alpha_inv(const OmegaParams& par, cplx w);

/// Sine map z -> -i sin(-pi/2 + pi z/c - i pi/eta), half-strip onto Re > 0.
cplx psi_alpha(const OmegaParams& par, cplx z);
/// Inverse of psi_alpha, half-plane onto the half-strip.
cplx psi_alpha_inv(const OmegaParams& par, cplx w);

bool in_half_strip(const OmegaParams& par, cplx z);

/// Solves the (P,Q) system for Re zeta0 > 0, t >= 0 in closed form.
PQState pq_solve(const OmegaParams& par, cplx zeta0, double t);

/// Map of the disc onto the wedge i{-theta < arg < 0}; theta in (0, pi].
cplx sector_koenigs(double theta, cplx z);
cplx sector_koenigs_inv(double theta, cplx w);

/// Map of the disc onto the vertical strip 0 < Re < pi/lambda.
cplx strip_koenigs(double lambda, cplx z);
cplx strip_koenigs_inv(double lambda, cplx w);

/// Newton inversion of an analytic map, derivative by central differences.
/// Throws std::runtime_error carrying the last residual on non-convergence.
cplx newton_invert(const std::function<cplx(cplx)>& f, cplx w, cplx z_seed,
                   double tolerance = 1e-12, int max_iter = 100);

}  // namespace koenigs
