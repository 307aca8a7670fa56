#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koenigs/domains.hpp"

namespace koenigs {

enum class Family {
    ParabolicAutoPlus,
    ParabolicAutoMinus,
    HyperbolicGroup,
    SectorFamily,
    OmegaSemigroup,
    HorocycleReduced,
};

/// Half-plane point w = exp(log_r + i phi); safe far beyond double range.
struct LogPolar {
    double log_r;
    double phi;
};

struct OrbitPoint {
    double t;
    cplx z_disc;    // orbit point in the disc (normalized coordinates, tau -> 1)
    cplx w_half;    // half-plane view; overflows to inf for extreme t
    double rho;     // |w_half|, may be inf
    double theta;   // arg w_half, in (-pi/2, pi/2)
    double log_rho; // always finite
};

/// A concrete semigroup together with its linearizing (Koenigs) data.
/// Orbits are evaluated in closed form in half-plane coordinates normalized
/// so the base point maps to 1 and the Denjoy-Wolff point to infinity.
struct SemigroupModel {
    Family family;
    double lambda = 0.0;                 // HyperbolicGroup
    double theta = 0.0;                  // SectorFamily aperture
    std::optional<OmegaParams> omega;    // OmegaSemigroup
    cplx zeta0{0.0, 0.0};                // OmegaSemigroup anchor in its domain
    cplx tau{1.0, 0.0};                  // Denjoy-Wolff point of the disc model
    std::optional<StarlikeDomain> koenigs_domain;
    std::shared_ptr<const SemigroupModel> parent;  // HorocycleReduced only
    std::string name;

    LogPolar orbit_logpolar(double t) const;
    OrbitPoint orbit(double t) const;

    cplx koenigs(cplx z) const;       // disc -> Koenigs domain
    cplx koenigs_inv(cplx w) const;
    cplx map(double t, cplx z) const;  // phi_t on the disc

    /// Koenigs image of the base point (h(0)).
    cplx base_image() const;
};

SemigroupModel make_parabolic_auto(bool positive_direction = true);
SemigroupModel make_hyperbolic_group(double lambda);
SemigroupModel make_sector_family(double theta);
SemigroupModel make_omega_semigroup(double alpha, double mu,
                                    std::optional<cplx> zeta0 = std::nullopt);

/// Conjugates the semigroup so the Koenigs domain becomes the image of the
/// half-plane Re > 1/2; speeds change only by bounded amounts.
SemigroupModel horocycle_reduce(const SemigroupModel& model);

double semigroup_law_residual(const SemigroupModel& model, double s, double t, cplx z);
double intertwining_residual(const SemigroupModel& model, cplx z, double t);

struct StepTrace {
    double value;  // one-step hyperbolic displacement at t_max
    std::vector<std::pair<double, double>> trace;
};
StepTrace hyperbolic_step(const SemigroupModel& model, double t_max);

std::string model_to_json(const SemigroupModel& model);
SemigroupModel model_from_json(const std::string& text);

}  // namespace koenigs
