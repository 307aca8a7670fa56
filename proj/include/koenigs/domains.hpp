#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "koenigs/conformal.hpp"
#include "koenigs/hyperbolic.hpp"

namespace koenigs {

struct StarlikeDomain;

// ---- shape variants -------------------------------------------------------

struct HalfPlaneRight {};
struct HalfPlaneLeft {};

struct VerticalStrip {
    double a, b;  // a < Re z < b
};

struct SectorShape {
    double theta;  // aperture in (0, pi]; the wedge i{-theta < arg < 0}
};

struct HalfParabola {
    double alpha;  // > 1
    double m;      // > 0; region Re z > 0, Im z > m (Re z)^alpha
};

struct OmegaShape {
    OmegaParams par;  // power-map image of the half-strip S_{alpha,mu}
};

/// Piecewise-linear lower boundary. Re of the vertices must be
/// non-decreasing. Each end is either a vertical wall going up to
/// infinity, or (extend_*) the prolongation of the end segment.
struct PolylineShape {
    std::vector<cplx> vertices;
    bool extend_left = false;
    bool extend_right = false;
};

/// Intersection of a base domain with a vertical half-plane.
struct HalfPlaneCut {
    std::shared_ptr<const StarlikeDomain> base;
    double x_cut;
    bool keep_right;
};

struct StarlikeDomain {
    std::variant<HalfPlaneRight, HalfPlaneLeft, VerticalStrip, SectorShape,
                 HalfParabola, OmegaShape, PolylineShape, HalfPlaneCut>
        shape;
    cplx offset{0.0, 0.0};
    bool mirrored = false;  // reflect across the imaginary axis (z -> -conj z)
};

// Convenience constructors with parameter validation.
StarlikeDomain make_halfplane_right(cplx offset = 0.0);
StarlikeDomain make_halfplane_left(cplx offset = 0.0);
StarlikeDomain make_strip(double a, double b);
StarlikeDomain make_sector(double theta);
StarlikeDomain make_half_parabola(double alpha, double m, bool mirrored = false, cplx offset = 0.0);
StarlikeDomain make_omega(double alpha, double mu, bool mirrored = false, cplx offset = 0.0);
StarlikeDomain make_polyline(std::vector<cplx> vertices, bool extend_left, bool extend_right);

// ---- queries ---------------------------------------------------------------

bool contains(const StarlikeDomain& dom, cplx z);

/// inf{ y : x + iy in the domain }; +inf when the vertical line misses the
/// domain, -inf when it is contained entirely.
double lower_envelope(const StarlikeDomain& dom, double x);

/// Horizontal extent (x_lo, x_hi) of the domain; entries may be infinite.
std::pair<double, double> x_range(const StarlikeDomain& dom);

/// Distance from q to the part of the boundary with Re in [x_lo, x_hi];
/// +inf when that part is empty. Also reports the nearest boundary point.
struct BoundaryHit {
    double dist = std::numeric_limits<double>::infinity();
    cplx point{0.0, 0.0};
};
BoundaryHit boundary_distance(const StarlikeDomain& dom, cplx q,
                              double x_lo = -std::numeric_limits<double>::infinity(),
                              double x_hi = std::numeric_limits<double>::infinity());

/// delta^+/delta^- of the base point p at height t (both capped by t).
std::pair<double, double> delta(const StarlikeDomain& dom, cplx p, double t);

/// sigma(t) = (delta^+ - delta^-)/2 + i(Im p + t). The formula drops Re p,
/// so the membership assertion is made on the point translated back by Re p;
/// translate the domain first if absolute coordinates matter.
cplx quasi_geodesic_sigma(const StarlikeDomain& dom, cplx p, double t);

// ---- slope classification --------------------------------------------------

enum class Slope {
    NonTangential,
    TangentialMinusHalfPi,
    TangentialPlusHalfPi,
    Inconclusive,
};

struct SlopeTraceRow {
    double t;
    double delta_plus;
    double delta_minus;
    double ratio;
};

struct SlopeVerdict {
    Slope verdict = Slope::Inconclusive;
    double drift = 0.0;  // fitted d log ratio / d log t on the tail window
    std::vector<SlopeTraceRow> trace;
};

const char* slope_name(Slope s);

SlopeVerdict slope_classify(const StarlikeDomain& dom, cplx p, double t_max, int n_samples);

// ---- splitting and model classification ------------------------------------

std::pair<StarlikeDomain, StarlikeDomain> split_domain(const StarlikeDomain& dom,
                                                       cplx p, double eps);

struct ModelClass {
    enum Kind { Hyperbolic, ParabolicPositiveStep, ParabolicZeroStep } kind;
    double lambda = 0.0;  // spectral value, set for Hyperbolic
};

ModelClass classify_model(const StarlikeDomain& dom);

// ---- serialization ----------------------------------------------------------

std::string domain_to_json(const StarlikeDomain& dom);
StarlikeDomain domain_from_json(const std::string& text);

}  // namespace koenigs
