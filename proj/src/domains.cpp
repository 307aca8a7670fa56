#include "koenigs/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace koenigs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

cplx to_local(const StarlikeDomain& dom, cplx z) {
    cplx w = z - dom.offset;
    return dom.mirrored ? -std::conj(w) : w;
}

cplx to_world(const StarlikeDomain& dom, cplx z) {
    return dom.offset + (dom.mirrored ? -std::conj(z) : z);
}

// ---- boundary curves --------------------------------------------------------

struct BoundaryCurve {
    std::function<cplx(double)> at;  // world coordinates
    double s_lo = 0.0;
    double s_hi = kInf;
    bool linear = false;
    cplx a{}, d{};  // linear: at(s) = a + s d with |d| = 1
    int re_dir = 0;
    int im_dir = 0;
    double re_clip_lo = -kInf;
    double re_clip_hi = kInf;
};

BoundaryCurve make_line(cplx a, cplx d, double s_lo, double s_hi) {
    BoundaryCurve c;
    c.linear = true;
    c.a = a;
    c.d = d / std::abs(d);
    c.s_lo = s_lo;
    c.s_hi = s_hi;
    c.re_dir = c.d.real() > 1e-15 ? 1 : (c.d.real() < -1e-15 ? -1 : 0);
    c.im_dir = c.d.imag() > 1e-15 ? 1 : (c.d.imag() < -1e-15 ? -1 : 0);
    c.at = [a = c.a, d = c.d](double s) { return a + s * d; };
    return c;
}

BoundaryCurve transformed(BoundaryCurve c, const StarlikeDomain& dom) {
    if (dom.mirrored) {
        c.re_dir = -c.re_dir;
        if (c.linear) {
            c.a = dom.offset + -std::conj(c.a);
            c.d = -std::conj(c.d);
            c.at = [a = c.a, d = c.d](double s) { return a + s * d; };
        } else {
            c.at = [at = std::move(c.at), off = dom.offset](double s) {
                return off + -std::conj(at(s));
            };
        }
    } else if (dom.offset != cplx(0.0, 0.0)) {
        if (c.linear) {
            c.a += dom.offset;
            c.at = [a = c.a, d = c.d](double s) { return a + s * d; };
        } else {
            c.at = [at = std::move(c.at), off = dom.offset](double s) { return off + at(s); };
        }
    }
    return c;
}

std::vector<BoundaryCurve> boundary_curves(const StarlikeDomain& dom);

struct CurveBuilder {
    const StarlikeDomain& dom;

    std::vector<BoundaryCurve> operator()(const HalfPlaneRight&) const {
        return {transformed(make_line(0.0, kI, -kInf, kInf), dom)};
    }
    std::vector<BoundaryCurve> operator()(const HalfPlaneLeft&) const {
        return {transformed(make_line(0.0, kI, -kInf, kInf), dom)};
    }
    std::vector<BoundaryCurve> operator()(const VerticalStrip& s) const {
        return {transformed(make_line(cplx(s.a, 0.0), kI, -kInf, kInf), dom),
                transformed(make_line(cplx(s.b, 0.0), kI, -kInf, kInf), dom)};
    }
    std::vector<BoundaryCurve> operator()(const SectorShape& s) const {
        return {transformed(make_line(0.0, kI, 0.0, kInf), dom),
                transformed(make_line(0.0, std::polar(1.0, kPi / 2.0 - s.theta), 0.0, kInf), dom)};
    }
    std::vector<BoundaryCurve> operator()(const HalfParabola& p) const {
        BoundaryCurve arc;
        arc.s_lo = 0.0;
        arc.s_hi = kInf;
        arc.re_dir = 1;
        arc.im_dir = 1;
        arc.at = [alpha = p.alpha, m = p.m](double s) {
            return cplx(s, m * std::pow(s, alpha));
        };
        return {transformed(make_line(0.0, kI, 0.0, kInf), dom), transformed(std::move(arc), dom)};
    }
    std::vector<BoundaryCurve> operator()(const OmegaShape& o) const {
        const OmegaParams& par = o.par;
        const double wall_base = std::pow(par.c / par.eta, par.beta);
        BoundaryCurve g2;  // image of the bottom edge, Re increasing, Im decreasing
        g2.s_lo = 0.0;
        g2.s_hi = par.c;
        g2.re_dir = 1;
        g2.im_dir = -1;
        g2.at = [par](double s) { return phi_alpha(par, cplx(s, par.c / par.eta)); };
        BoundaryCurve g3;  // image of the right edge, both coordinates increasing
        g3.s_lo = par.c / par.eta;
        g3.s_hi = kInf;
        g3.re_dir = 1;
        g3.im_dir = 1;
        g3.at = [par](double t) { return phi_alpha(par, cplx(par.c, t)); };
        return {transformed(make_line(cplx(0.0, wall_base), kI, 0.0, kInf), dom),
                transformed(std::move(g2), dom), transformed(std::move(g3), dom)};
    }
    std::vector<BoundaryCurve> operator()(const PolylineShape& p) const {
        std::vector<BoundaryCurve> out;
        const auto& v = p.vertices;
        const size_t n = v.size();
        if (p.extend_left)
            out.push_back(transformed(make_line(v[0], v[0] - v[1], 0.0, kInf), dom));
        else
            out.push_back(transformed(make_line(v[0], kI, 0.0, kInf), dom));
        for (size_t k = 0; k + 1 < n; ++k)
            out.push_back(transformed(make_line(v[k], v[k + 1] - v[k], 0.0, std::abs(v[k + 1] - v[k])), dom));
        if (p.extend_right)
            out.push_back(transformed(make_line(v[n - 1], v[n - 1] - v[n - 2], 0.0, kInf), dom));
        else
            out.push_back(transformed(make_line(v[n - 1], kI, 0.0, kInf), dom));
        return out;
    }
    std::vector<BoundaryCurve> operator()(const HalfPlaneCut& c) const {
        std::vector<BoundaryCurve> out = boundary_curves(*c.base);
        for (auto& bc : out) {
            if (c.keep_right)
                bc.re_clip_lo = std::max(bc.re_clip_lo, c.x_cut);
            else
                bc.re_clip_hi = std::min(bc.re_clip_hi, c.x_cut);
        }
        double env = lower_envelope(*c.base, c.x_cut);
        if (env < kInf) {
            if (env == -kInf)
                out.push_back(make_line(cplx(c.x_cut, 0.0), kI, -kInf, kInf));
            else
                out.push_back(make_line(cplx(c.x_cut, env), kI, 0.0, kInf));
        }
        return out;
    }
};

std::vector<BoundaryCurve> boundary_curves(const StarlikeDomain& dom) {
    return std::visit(CurveBuilder{dom}, dom.shape);
}

// ---- distance minimization --------------------------------------------------

struct MinHit {
    double dist = kInf;
    cplx point{};
};

MinHit linear_min_dist(const BoundaryCurve& c, cplx q, double x_lo, double x_hi) {
    double s_lo = c.s_lo, s_hi = c.s_hi;
    const double xl = std::max(x_lo, c.re_clip_lo);
    const double xh = std::min(x_hi, c.re_clip_hi);
    if (c.re_dir == 0) {
        if (c.a.real() < xl || c.a.real() > xh) return {};
    } else {
        double s1 = (xl - c.a.real()) / c.d.real();
        double s2 = (xh - c.a.real()) / c.d.real();
        if (s1 > s2) std::swap(s1, s2);
        s_lo = std::max(s_lo, s1);
        s_hi = std::min(s_hi, s2);
        if (s_lo > s_hi) return {};
    }
    double s = (std::conj(c.d) * (q - c.a)).real();
    s = std::clamp(s, s_lo, s_hi);
    if (!std::isfinite(s)) return {};
    cplx p = c.a + s * c.d;
    return {std::abs(q - p), p};
}

// Bisection for Re at(s) = x on a monotone-Re smooth arc.
double re_crossing(const BoundaryCurve& c, double x, double lo, double hi) {
    const double sgn = c.re_dir;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        if (sgn * (c.at(mid).real() - x) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Past this parameter the distance to q increases monotonically.
bool beyond(const BoundaryCurve& c, double s, cplx q) {
    cplx p = c.at(s);
    bool re_ok = c.re_dir == 0 || c.re_dir * (p.real() - q.real()) >= 0.0;
    bool im_ok = c.im_dir == 0 || c.im_dir * (p.imag() - q.imag()) >= 0.0;
    return re_ok && im_ok;
}

MinHit golden_refine(const BoundaryCurve& c, cplx q, double a, double b) {
    constexpr double gr = 0.6180339887498949;
    auto f = [&](double s) { return std::abs(c.at(s) - q); };
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 200 && (b - a) > 1e-10 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    double s = 0.5 * (a + b);
    return {f(s), c.at(s)};
}

MinHit smooth_min_dist(const BoundaryCurve& c, cplx q, double x_lo, double x_hi) {
    double s_lo = c.s_lo, s_hi = c.s_hi;
    if (std::isinf(s_hi)) {
        double cap = std::max(1.0, 2.0 * std::abs(s_lo) + 1.0);
        int guard = 0;
        while (!beyond(c, cap, q) && ++guard < 200) cap *= 2.0;
        s_hi = cap;
    }
    const double xl = std::max(x_lo, c.re_clip_lo);
    const double xh = std::min(x_hi, c.re_clip_hi);
    if (xl > -kInf || xh < kInf) {
        double re_lo = c.at(s_lo).real(), re_hi = c.at(s_hi).real();
        if (c.re_dir < 0) std::swap(re_lo, re_hi);
        if (re_hi < xl || re_lo > xh) {
            // The constrained boundary piece may still start past the cap.
            if (c.re_dir > 0 && re_hi < xl && std::isinf(c.s_hi)) {
                double hi = s_hi;
                int guard = 0;
                while (c.at(hi).real() < xl && ++guard < 200) hi *= 2.0;
                double s = re_crossing(c, xl, s_hi, hi);
                return {std::abs(c.at(s) - q), c.at(s)};
            }
            return {};
        }
        if (c.re_dir > 0) {
            if (c.at(s_lo).real() < xl) s_lo = re_crossing(c, xl, s_lo, s_hi);
            if (c.at(s_hi).real() > xh) s_hi = re_crossing(c, xh, s_lo, s_hi);
        } else if (c.re_dir < 0) {
            if (c.at(s_lo).real() > xh) s_lo = re_crossing(c, xh, s_lo, s_hi);
            if (c.at(s_hi).real() < xl) s_hi = re_crossing(c, xl, s_lo, s_hi);
        }
        if (s_lo > s_hi) return {};
    }

    // Coarse scan, then golden refinement around the best local minima.
    std::vector<double> grid;
    const int n = 64;
    for (int i = 0; i <= n; ++i) grid.push_back(s_lo + (s_hi - s_lo) * i / n);
    if (s_lo >= 0.0 && s_hi > 100.0 * std::max(s_lo, 1.0)) {
        double g_lo = std::max(s_lo, s_hi * 1e-9);
        for (int i = 0; i <= n; ++i)
            grid.push_back(g_lo * std::pow(s_hi / g_lo, double(i) / n));
        std::sort(grid.begin(), grid.end());
    }
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) vals[i] = std::abs(c.at(grid[i]) - q);

    std::vector<size_t> minima;
    for (size_t i = 0; i < grid.size(); ++i) {
        bool left_ok = i == 0 || vals[i] <= vals[i - 1];
        bool right_ok = i + 1 == grid.size() || vals[i] <= vals[i + 1];
        if (left_ok && right_ok) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(),
              [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    if (minima.size() > 3) minima.resize(3);

    MinHit best;
    for (size_t k : minima) {
        double a = k == 0 ? grid[0] : grid[k - 1];
        double b = k + 1 == grid.size() ? grid.back() : grid[k + 1];
        MinHit h = a < b ? golden_refine(c, q, a, b) : MinHit{vals[k], c.at(grid[k])};
        if (h.dist < best.dist) best = h;
    }
    return best;
}

MinHit curve_min_dist(const BoundaryCurve& c, cplx q, double x_lo, double x_hi) {
    return c.linear ? linear_min_dist(c, q, x_lo, x_hi) : smooth_min_dist(c, q, x_lo, x_hi);
}

// ---- envelope ----------------------------------------------------------------

double envelope_local(const StarlikeDomain& dom, double x);

struct EnvelopeVisitor {
    const StarlikeDomain& dom;
    double x;

    double operator()(const HalfPlaneRight&) const { return x > 0.0 ? -kInf : kInf; }
    double operator()(const HalfPlaneLeft&) const { return x < 0.0 ? -kInf : kInf; }
    double operator()(const VerticalStrip& s) const {
        return (x > s.a && x < s.b) ? -kInf : kInf;
    }
    double operator()(const SectorShape& s) const {
        if (!(x > 0.0)) return kInf;
        if (s.theta >= kPi) return -kInf;
        return x * std::tan(kPi / 2.0 - s.theta);
    }
    double operator()(const HalfParabola& p) const {
        return x > 0.0 ? p.m * std::pow(x, p.alpha) : kInf;
    }
    double operator()(const OmegaShape& o) const {
        if (!(x > 0.0)) return kInf;
        const OmegaParams& par = o.par;
        BoundaryCurve g2;
        g2.s_lo = 0.0;
        g2.s_hi = par.c;
        g2.re_dir = 1;
        g2.at = [par](double s) { return phi_alpha(par, cplx(s, par.c / par.eta)); };
        double knee = g2.at(par.c).real();
        if (x <= knee) return g2.at(re_crossing(g2, x, 0.0, par.c)).imag();
        BoundaryCurve g3;
        g3.re_dir = 1;
        g3.at = [par](double t) { return phi_alpha(par, cplx(par.c, t)); };
        double hi = 2.0 * par.c / par.eta;
        int guard = 0;
        while (g3.at(hi).real() < x && ++guard < 300) hi *= 2.0;
        return g3.at(re_crossing(g3, x, par.c / par.eta, hi)).imag();
    }
    double operator()(const PolylineShape& p) const {
        const auto& v = p.vertices;
        const size_t n = v.size();
        if (x < v[0].real() || (x == v[0].real() && !p.extend_left)) {
            if (!p.extend_left) return kInf;
            double slope = (v[1].imag() - v[0].imag()) / (v[1].real() - v[0].real());
            return v[0].imag() + slope * (x - v[0].real());
        }
        if (x > v[n - 1].real() || (x == v[n - 1].real() && !p.extend_right)) {
            if (!p.extend_right) return kInf;
            double slope =
                (v[n - 1].imag() - v[n - 2].imag()) / (v[n - 1].real() - v[n - 2].real());
            return v[n - 1].imag() + slope * (x - v[n - 1].real());
        }
        double env = -kInf;
        for (size_t k = 0; k + 1 < n; ++k) {
            double ra = v[k].real(), rb = v[k + 1].real();
            if (x < ra || x > rb) continue;
            double cand;
            if (rb - ra < 1e-300)
                cand = std::max(v[k].imag(), v[k + 1].imag());
            else
                cand = v[k].imag() + (v[k + 1].imag() - v[k].imag()) * (x - ra) / (rb - ra);
            env = std::max(env, cand);
        }
        return env;
    }
    double operator()(const HalfPlaneCut& c) const {
        bool kept = c.keep_right ? x > c.x_cut : x < c.x_cut;
        return kept ? lower_envelope(*c.base, x) : kInf;
    }
};

double envelope_local(const StarlikeDomain& dom, double x) {
    return std::visit(EnvelopeVisitor{dom, x}, dom.shape);
}

// ---- contains ----------------------------------------------------------------

struct ContainsVisitor {
    cplx z;  // local coordinates

    bool operator()(const HalfPlaneRight&) const { return z.real() > 0.0; }
    bool operator()(const HalfPlaneLeft&) const { return z.real() < 0.0; }
    bool operator()(const VerticalStrip& s) const { return z.real() > s.a && z.real() < s.b; }
    bool operator()(const SectorShape& s) const {
        cplx u = -kI * z;
        if (std::abs(u) == 0.0) return false;
        double a = std::arg(u);
        return a > -s.theta && a < 0.0;
    }
    bool operator()(const HalfParabola& p) const {
        return z.real() > 0.0 && z.imag() > p.m * std::pow(z.real(), p.alpha);
    }
    bool operator()(const OmegaShape& o) const {
        cplx u = -kI * z;
        if (u.real() <= 0.0 && std::abs(u.imag()) < 1e-300) return false;
        return in_half_strip(o.par, phi_alpha_inv(o.par, z));
    }
    bool operator()(const PolylineShape& p) const {
        StarlikeDomain plain{p, cplx(0.0, 0.0), false};
        return z.imag() > envelope_local(plain, z.real());
    }
    bool operator()(const HalfPlaneCut& c) const {
        bool side = c.keep_right ? z.real() > c.x_cut : z.real() < c.x_cut;
        return side && contains(*c.base, z);
    }
};

}  // namespace

bool contains(const StarlikeDomain& dom, cplx z) {
    return std::visit(ContainsVisitor{to_local(dom, z)}, dom.shape);
}

double lower_envelope(const StarlikeDomain& dom, double x) {
    double xl = dom.mirrored ? dom.offset.real() - x : x - dom.offset.real();
    double env = envelope_local(dom, xl);
    return std::isfinite(env) ? env + dom.offset.imag() : env;
}

namespace {

struct XRangeVisitor {
    std::pair<double, double> operator()(const HalfPlaneRight&) const { return {0.0, kInf}; }
    std::pair<double, double> operator()(const HalfPlaneLeft&) const { return {-kInf, 0.0}; }
    std::pair<double, double> operator()(const VerticalStrip& s) const { return {s.a, s.b}; }
    std::pair<double, double> operator()(const SectorShape&) const { return {0.0, kInf}; }
    std::pair<double, double> operator()(const HalfParabola&) const { return {0.0, kInf}; }
    std::pair<double, double> operator()(const OmegaShape&) const { return {0.0, kInf}; }
    std::pair<double, double> operator()(const PolylineShape& p) const {
        return {p.extend_left ? -kInf : p.vertices.front().real(),
                p.extend_right ? kInf : p.vertices.back().real()};
    }
    std::pair<double, double> operator()(const HalfPlaneCut& c) const {
        auto [lo, hi] = x_range(*c.base);
        if (c.keep_right)
            lo = std::max(lo, c.x_cut);
        else
            hi = std::min(hi, c.x_cut);
        return {lo, hi};
    }
};

}  // namespace

std::pair<double, double> x_range(const StarlikeDomain& dom) {
    auto [lo, hi] = std::visit(XRangeVisitor{}, dom.shape);
    if (dom.mirrored) {
        double nlo = -hi, nhi = -lo;
        lo = nlo;
        hi = nhi;
    }
    if (std::isfinite(lo)) lo += dom.offset.real();
    if (std::isfinite(hi)) hi += dom.offset.real();
    return {lo, hi};
}

BoundaryHit boundary_distance(const StarlikeDomain& dom, cplx q, double x_lo, double x_hi) {
    BoundaryHit best;
    for (const auto& c : boundary_curves(dom)) {
        MinHit h = curve_min_dist(c, q, x_lo, x_hi);
        if (h.dist < best.dist) {
            best.dist = h.dist;
            best.point = h.point;
        }
    }
    return best;
}

// ---- constructors ------------------------------------------------------------

StarlikeDomain make_halfplane_right(cplx offset) { return {HalfPlaneRight{}, offset, false}; }
StarlikeDomain make_halfplane_left(cplx offset) { return {HalfPlaneLeft{}, offset, false}; }

StarlikeDomain make_strip(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("strip requires a < b");
    return {VerticalStrip{a, b}, cplx(0.0, 0.0), false};
}

StarlikeDomain make_sector(double theta) {
    if (!(theta > 0.0 && theta <= kPi)) throw std::invalid_argument("sector aperture in (0, pi]");
    return {SectorShape{theta}, cplx(0.0, 0.0), false};
}

StarlikeDomain make_half_parabola(double alpha, double m, bool mirrored, cplx offset) {
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
    if (!(m > 0.0)) throw std::invalid_argument("m must be > 0");
    return {HalfParabola{alpha, m}, offset, mirrored};
}

StarlikeDomain make_omega(double alpha, double mu, bool mirrored, cplx offset) {
    return {OmegaShape{OmegaParams(alpha, mu)}, offset, mirrored};
}

StarlikeDomain make_polyline(std::vector<cplx> vertices, bool extend_left, bool extend_right) {
    if (vertices.size() < 2) throw std::invalid_argument("polyline needs at least 2 vertices");
    for (size_t k = 0; k + 1 < vertices.size(); ++k) {
        if (vertices[k + 1].real() < vertices[k].real())
            throw std::invalid_argument("polyline vertices must have non-decreasing Re");
        if (std::abs(vertices[k + 1] - vertices[k]) < 1e-300)
            throw std::invalid_argument("polyline has a zero-length segment");
    }
    if (extend_left && !(vertices[1].real() > vertices[0].real()))
        throw std::invalid_argument("left extension requires a non-vertical first segment");
    size_t n = vertices.size();
    if (extend_right && !(vertices[n - 1].real() > vertices[n - 2].real()))
        throw std::invalid_argument("right extension requires a non-vertical last segment");
    return {PolylineShape{std::move(vertices), extend_left, extend_right}, cplx(0.0, 0.0), false};
}

// ---- delta / sigma -------------------------------------------------------------

std::pair<double, double> delta(const StarlikeDomain& dom, cplx p, double t) {
    if (!contains(dom, p)) throw std::domain_error("delta: base point not in the domain");
    if (!(t >= 0.0)) throw std::domain_error("delta: t must be >= 0");
    const cplx q = p + cplx(0.0, t);
    double dplus = std::min(t, boundary_distance(dom, q, p.real(), kInf).dist);
    double dminus = std::min(t, boundary_distance(dom, q, -kInf, p.real()).dist);
    return {dplus, dminus};
}

cplx quasi_geodesic_sigma(const StarlikeDomain& dom, cplx p, double t) {
    auto [dp, dm] = delta(dom, p, t);
    cplx sigma{0.5 * (dp - dm), p.imag() + t};
    if (t > 0.0 && !contains(dom, sigma + p.real()))
        throw std::logic_error("quasi-geodesic point left the domain");
    return sigma;
}

// ---- slope classification -------------------------------------------------------

const char* slope_name(Slope s) {
    switch (s) {
        case Slope::NonTangential: return "non-tangential";
        case Slope::TangentialMinusHalfPi: return "tangential, slope -pi/2";
        case Slope::TangentialPlusHalfPi: return "tangential, slope +pi/2";
        default: return "inconclusive";
    }
}

SlopeVerdict slope_classify(const StarlikeDomain& dom, cplx p, double t_max, int n_samples) {
    if (!(t_max >= 100.0)) throw std::invalid_argument("slope_classify: t_max >= 100 required");
    if (n_samples < 10) throw std::invalid_argument("slope_classify: need at least 10 samples");

    SlopeVerdict out;
    for (int i = 0; i < n_samples; ++i) {
        double t = std::pow(t_max, double(i) / (n_samples - 1));
        auto [dp, dm] = delta(dom, p, t);
        out.trace.push_back({t, dp, dm, dp / dm});
    }

    // Drift of log ratio vs log t, fitted on the tail half of the grid.
    size_t lo = out.trace.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (size_t i = lo; i < out.trace.size(); ++i) {
        double x = std::log(out.trace[i].t), y = std::log(out.trace[i].ratio);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    out.drift = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    constexpr double kBand = 10.0;
    bool banded = std::all_of(out.trace.begin(), out.trace.end(), [&](const SlopeTraceRow& r) {
        return r.ratio >= 1.0 / kBand && r.ratio <= kBand;
    });
    double r_last = out.trace.back().ratio;

    if (banded && std::abs(out.drift) < 0.05)
        out.verdict = Slope::NonTangential;
    else if (out.drift > 0.1 && r_last > 1e2)
        out.verdict = Slope::TangentialMinusHalfPi;
    else if (out.drift < -0.1 && r_last < 1e-2)
        out.verdict = Slope::TangentialPlusHalfPi;
    else
        out.verdict = Slope::Inconclusive;
    return out;
}

// ---- splitting / classification ---------------------------------------------------

std::pair<StarlikeDomain, StarlikeDomain> split_domain(const StarlikeDomain& dom, cplx p,
                                                       double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("split_domain: eps must be > 0");
    for (int k = 0; k < 128; ++k) {
        cplx probe = p + 2.0 * eps * std::polar(1.0, 2.0 * kPi * k / 128.0);
        if (!contains(dom, probe))
            throw std::invalid_argument("split_domain: disc B(p, 2 eps) leaves the domain");
    }
    if (!contains(dom, p)) throw std::invalid_argument("split_domain: p not in the domain");

    auto base = std::make_shared<const StarlikeDomain>(dom);
    StarlikeDomain plus{HalfPlaneCut{base, p.real() - eps, true}, cplx(0.0, 0.0), false};
    StarlikeDomain minus{HalfPlaneCut{base, p.real() + eps, false}, cplx(0.0, 0.0), false};
    return {plus, minus};
}

ModelClass classify_model(const StarlikeDomain& dom) {
    auto [lo, hi] = x_range(dom);
    bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) return {ModelClass::ParabolicZeroStep, 0.0};
    if (lo_inf || hi_inf) return {ModelClass::ParabolicPositiveStep, 0.0};
    if (!(hi > lo)) throw std::runtime_error("classify_model: degenerate horizontal extent");
    return {ModelClass::Hyperbolic, kPi / (hi - lo)};
}

// ---- serialization -----------------------------------------------------------------

namespace {

using nlohmann::json;

struct JsonVisitor {
    json& j;
    void operator()(const HalfPlaneRight&) const { j["variant"] = "half-plane-right"; }
    void operator()(const HalfPlaneLeft&) const { j["variant"] = "half-plane-left"; }
    void operator()(const VerticalStrip& s) const {
        j["variant"] = "vertical-strip";
        j["params"]["a"] = s.a;
        j["params"]["b"] = s.b;
    }
    void operator()(const SectorShape& s) const {
        j["variant"] = "sector";
        j["params"]["theta"] = s.theta;
    }
    void operator()(const HalfParabola& p) const {
        j["variant"] = "half-parabola";
        j["params"]["alpha"] = p.alpha;
        j["params"]["m"] = p.m;
    }
    void operator()(const OmegaShape& o) const {
        j["variant"] = "omega";
        j["params"]["alpha"] = o.par.alpha;
        j["params"]["mu"] = o.par.mu;
    }
    void operator()(const PolylineShape& p) const {
        j["variant"] = "polyline";
        json verts = json::array();
        for (cplx v : p.vertices) verts.push_back({v.real(), v.imag()});
        j["params"]["vertices"] = verts;
        j["params"]["extend_left"] = p.extend_left;
        j["params"]["extend_right"] = p.extend_right;
    }
    void operator()(const HalfPlaneCut& c) const {
        j["variant"] = "cut";
        j["params"]["base"] = json::parse(domain_to_json(*c.base));
        j["params"]["x_cut"] = c.x_cut;
        j["params"]["keep_right"] = c.keep_right;
    }
};

}  // namespace

std::string domain_to_json(const StarlikeDomain& dom) {
    json j;
    j["params"] = json::object();
    std::visit(JsonVisitor{j}, dom.shape);
    if (dom.mirrored) j["params"]["mirrored"] = true;
    j["offset"] = {dom.offset.real(), dom.offset.imag()};
    return j.dump();
}

StarlikeDomain domain_from_json(const std::string& text) {
    json j = json::parse(text);
    std::string variant = j.at("variant").get<std::string>();
    json params = j.value("params", json::object());
    cplx offset{0.0, 0.0};
    if (j.contains("offset"))
        offset = cplx(j["offset"].at(0).get<double>(), j["offset"].at(1).get<double>());
    bool mirrored = params.value("mirrored", false);

    StarlikeDomain dom;
    if (variant == "half-plane-right")
        dom.shape = HalfPlaneRight{};
    else if (variant == "half-plane-left")
        dom.shape = HalfPlaneLeft{};
    else if (variant == "vertical-strip")
        dom = make_strip(params.at("a").get<double>(), params.at("b").get<double>());
    else if (variant == "sector")
        dom = make_sector(params.at("theta").get<double>());
    else if (variant == "half-parabola")
        dom = make_half_parabola(params.at("alpha").get<double>(), params.at("m").get<double>());
    else if (variant == "omega")
        dom = make_omega(params.at("alpha").get<double>(), params.at("mu").get<double>());
    else if (variant == "polyline") {
        std::vector<cplx> verts;
        for (const auto& v : params.at("vertices"))
            verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        dom = make_polyline(std::move(verts), params.value("extend_left", false),
                            params.value("extend_right", false));
    } else if (variant == "cut") {
        auto base = std::make_shared<const StarlikeDomain>(
            domain_from_json(params.at("base").dump()));
        dom.shape = HalfPlaneCut{base, params.at("x_cut").get<double>(),
                                 params.at("keep_right").get<bool>()};
    } else {
        throw std::invalid_argument("unknown domain variant: " + variant);
    }
    dom.offset = offset;
    dom.mirrored = mirrored;
    return dom;
}

}  // namespace koenigs
