#include "koenigs/conformal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace koenigs {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

OmegaParams::OmegaParams(double alpha_, double mu_) : alpha(alpha_), mu(mu_) {
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    beta = alpha / (alpha - 1.0);
    c = 1.0 / (std::pow(mu, 1.0 / alpha) * beta);
    eta = std::tan(kPi / (2.0 * beta));
}

cplx phi_alpha(const OmegaParams& par, cplx z) {
    cplx u = -kI * z;
    if (u.real() < 0.0 && std::abs(u.imag()) < tol::coincident)
        throw std::domain_error("phi_alpha branch cut: -iz on the negative real axis");
    return kI * std::exp(par.beta * std::log(u));
}

cplx phi_alpha_inv(const OmegaParams& par, cplx w) {
    cplx u = -kI * w;
    if (u.real() < 0.0 && std::abs(u.imag()) < tol::coincident)
        throw std::domain_error("phi_alpha_inv branch cut");
    return kI * std::exp(std::log(u) / par.beta);
}

cplx psi_alpha(const OmegaParams& par, cplx z) {
    cplx a = cplx(-kPi / 2.0, -kPi / par.eta) + (kPi / par.c) * z;
    return -kI * std::sin(a);
}

cplx psi_alpha_inv(const OmegaParams& par, cplx w) {
    // asin maps the upper half-plane into {|Re| < pi/2, Im > 0}, which is
    // exactly the sine half-strip in the a-variable.
    cplx a = std::asin(kI * w);
    return (a + cplx(kPi / 2.0, kPi / par.eta)) * (par.c / kPi);
}

bool in_half_strip(const OmegaParams& par, cplx z) {
    return z.real() > 0.0 && z.real() < par.c && z.imag() > par.c / par.eta;
}

PQState pq_solve(const OmegaParams& par, cplx zeta0, double t) {
    if (!(zeta0.real() > 0.0)) throw std::domain_error("pq_solve requires Re zeta0 > 0");
    if (!(t >= 0.0)) throw std::domain_error("pq_solve requires t >= 0");
    const double x0 = zeta0.real(), y0 = zeta0.imag();
    const double r = std::pow((t + y0) * (t + y0) + x0 * x0, 1.0 / (2.0 * par.beta));
    const double phi = std::atan2(x0, t + y0) / par.beta;
    return PQState{r * std::sin(phi), r * std::cos(phi), t, zeta0};
}

cplx sector_koenigs(double theta, cplx z) {
    if (!(theta > 0.0 && theta <= kPi)) throw std::invalid_argument("theta must be in (0, pi]");
    cplx c = cayley(1.0, z);
    return kI * std::polar(1.0, -theta / 2.0) * std::exp((theta / kPi) * std::log(c));
}

cplx sector_koenigs_inv(double theta, cplx w) {
    if (!(theta > 0.0 && theta <= kPi)) throw std::invalid_argument("theta must be in (0, pi]");
    cplx c = std::exp((kPi / theta) * std::log(-kI * std::polar(1.0, theta / 2.0) * w));
    return cayley_inv(1.0, c);
}

cplx strip_koenigs(double lambda, cplx z) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    cplx c = cayley(1.0, z);
    return (-kI * std::log(c) + kPi / 2.0) / lambda;
}

cplx strip_koenigs_inv(double lambda, cplx w) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    return cayley_inv(1.0, std::exp(kI * (lambda * w - kPi / 2.0)));
}

cplx newton_invert(const std::function<cplx(cplx)>& f, cplx w, cplx z_seed,
                   double tolerance, int max_iter) {
    cplx z = z_seed;
    double residual = std::abs(f(z) - w);
    for (int it = 0; it < max_iter; ++it) {
        cplx r = f(z) - w;
        residual = std::abs(r);
        if (residual < tolerance) return z;
        double h = 1e-6 * (1.0 + std::abs(z));
        cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(df) < tol::coincident)
            throw std::runtime_error("newton_invert: vanishing derivative");
        z -= r / df;
    }
    std::ostringstream os;
    os << "newton_invert: no convergence after " << max_iter
       << " iterations, residual " << residual;
    throw std::runtime_error(os.str());
}

}  // namespace koenigs
