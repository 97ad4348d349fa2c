// Assembly of the perturbed-ball boundary: six sphere troughs along the
// interface arcs, a C^1 collar at each of the twelve arc ends, four
// hemispherical valleys at the junction rays, plus background that blends to
// a sphere of radius 1+lambda. Exact patches are used for all geometric
// verification; the voxelizer consumes the radial graph built in radial.hpp.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "quadjunction/cone.hpp"
#include "quadjunction/errors.hpp"
#include "quadjunction/geometry.hpp"
#include "quadjunction/trough.hpp"

namespace qj {

struct DomainSpec {
    TetrahedralCone cone;
    double r_star = 0.15;
    double lambda = 0.15;   // outer-sphere inflation; defaults to r_star
    double eta = 0.075;     // goodnormals neighborhood; defaults to r_star/2
    double x_bar = 0.0;     // canonical trough extent; 0 selects the arc midpoint
};

inline DomainSpec make_domain_spec(const TetrahedralCone& cone, double r_star, double lambda,
                                   double eta, double x_bar = 0.0) {
    if (!(r_star > 0.0 && r_star < 0.2)) {
        std::ostringstream os;
        os << "r_star = " << r_star << " outside (0, 0.2)";
        throw DomainError(os.str());
    }
    if (!(eta > 0.0 && eta <= 0.5 * r_star)) {
        std::ostringstream os;
        os << "eta = " << eta << " outside (0, r_star/2] with r_star = " << r_star;
        throw DomainError(os.str());
    }
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    if (x_bar != 0.0 && !(x_bar > 2.0 * r_star && x_bar < 1.0))
        throw DomainError("x_bar must lie in (2 r_star, 1)");
    return DomainSpec{cone, r_star, lambda, eta, x_bar};
}

// Orthonormal frame at one end of one interface arc: u is the junction ray,
// a points along the arc toward the far junction, b = u x a is normal to the
// arc plane (b = +/- n_ij).
struct ArcEndFrame {
    Vec3 a, b, u;
    Vec3 to_world(const Vec3& p) const { return p.x * a + p.y * b + p.z * u; }
    Vec3 to_local(const Vec3& q) const { return {dot(q, a), dot(q, b), dot(q, u)}; }
};

// Geometry of one interface arc gamma_ij and its two junction ends.
struct ArcGeometry {
    int i = 0, j = 0;           // phase pair, i < j
    std::array<int, 2> junction{};  // triple index into kTriples per end
    std::array<ArcEndFrame, 2> frame{};
    double theta_total = 0.0;   // angle between the two junction rays
    double theta_clear = 0.0;   // angular clearance at each end, asin(2 r_star)

    // Unit point on the arc's great circle, measured from end e.
    Vec3 arc_point(int e, double theta) const {
        return std::cos(theta) * frame[e].u + std::sin(theta) * frame[e].a;
    }
};

inline int triple_index_for(int i, int j, int k) {
    for (int t = 0; t < 4; ++t) {
        const auto& T = kTriples[t];
        const std::array<int, 3> s{T[0], T[1], T[2]};
        const bool has_i = s[0] == i || s[1] == i || s[2] == i;
        const bool has_j = s[0] == j || s[1] == j || s[2] == j;
        const bool has_k = s[0] == k || s[1] == k || s[2] == k;
        if (has_i && has_j && has_k) return t;
    }
    return -1;
}

inline ArcGeometry make_arc_geometry(const TetrahedralCone& cone, int i, int j, double r_star) {
    ArcGeometry arc;
    arc.i = i;
    arc.j = j;
    std::array<int, 2> others{};
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != i && k != j) others[n++] = k;

    const Vec3 uk = cone.junction_ray(i, j, others[0]);
    const Vec3 ul = cone.junction_ray(i, j, others[1]);
    arc.junction[0] = triple_index_for(i, j, others[0]);
    arc.junction[1] = triple_index_for(i, j, others[1]);
    arc.theta_total = std::acos(std::clamp(dot(uk, ul), -1.0, 1.0));
    arc.theta_clear = std::asin(2.0 * r_star);

    const std::array<Vec3, 2> us{uk, ul};
    for (int e = 0; e < 2; ++e) {
        const Vec3 u = us[e];
        const Vec3 other = us[1 - e];
        Vec3 a = other - dot(other, u) * u;
        a = a / norm(a);
        arc.frame[e] = ArcEndFrame{a, cross(u, a), u};
    }
    return arc;
}

enum class PatchKind { trough, interpolation, valley, background };

inline const char* to_string(PatchKind k) {
    switch (k) {
        case PatchKind::trough: return "trough";
        case PatchKind::interpolation: return "interpolation";
        case PatchKind::valley: return "valley";
        default: return "background";
    }
}

// One parametric piece of the boundary over (s,t) in [0,1]^2.
class SurfacePatch {
public:
    PatchKind kind = PatchKind::background;
    std::string name;

    virtual ~SurfacePatch() = default;
    virtual Vec3 point(double s, double t) const = 0;
    virtual Vec3 unit_normal(double s, double t) const = 0;
};

// Sphere trough along one whole arc: Psi(theta, y) = (1+b(y)) c(theta) + y bhat.
class TroughPatch : public SurfacePatch {
public:
    TroughPatch(const ArcGeometry& arc, double r_star)
        : arc_(arc), r_(r_star), th0_(arc.theta_clear), th1_(arc.theta_total - arc.theta_clear) {
        kind = PatchKind::trough;
        name = "trough_" + std::to_string(arc.i + 1) + std::to_string(arc.j + 1);
    }

    double theta_of(double s) const { return th0_ + (th1_ - th0_) * s; }
    double y_of(double t) const { return r_ * (t - 0.5); }

    Vec3 point_at(double theta, double y) const {
        return (1.0 + arc_depth(r_, y)) * arc_.arc_point(0, theta) + y * arc_.frame[0].b;
    }
    Vec3 normal_at(double theta, double y) const {
        const double bp = arc_depth_prime(r_, y);
        const double s = std::sqrt(1.0 + bp * bp);
        return (arc_.arc_point(0, theta) - bp * arc_.frame[0].b) / s;
    }

    Vec3 point(double s, double t) const override { return point_at(theta_of(s), y_of(t)); }
    Vec3 unit_normal(double s, double t) const override { return normal_at(theta_of(s), y_of(t)); }

    const ArcGeometry& arc() const { return arc_; }

private:
    ArcGeometry arc_;
    double r_, th0_, th1_;
};

// Collar at one arc end, mapped from the canonical frame.
class CollarPatch : public SurfacePatch {
public:
    CollarPatch(const ArcGeometry& arc, int end, double r_star)
        : arc_(arc), end_(end), collar_(r_star), r_(r_star) {
        kind = PatchKind::interpolation;
        name = "collar_" + std::to_string(arc.i + 1) + std::to_string(arc.j + 1) + "_end" +
               std::to_string(end);
    }

    double y_of(double s) const { return r_ * (s - 0.5); }

    Vec3 point(double s, double t) const override {
        return arc_.frame[end_].to_world(collar_.point(y_of(s), t));
    }
    Vec3 unit_normal(double s, double t) const override {
        return arc_.frame[end_].to_world(collar_.unit_normal(y_of(s), t));
    }

    const Collar& canonical() const { return collar_; }
    const ArcGeometry& arc() const { return arc_; }
    int end() const { return end_; }

private:
    ArcGeometry arc_;
    int end_;
    Collar collar_;
    double r_;
};

// Hemispherical valley at one junction ray.
class ValleyPatch : public SurfacePatch {
public:
    ValleyPatch(int triple, const Vec3& ray, const Vec3& azimuth_ref, double r_star)
        : triple_(triple), r_(r_star) {
        kind = PatchKind::valley;
        const auto& T = kTriples[triple];
        name = "valley_" + std::to_string(T[0] + 1) + std::to_string(T[1] + 1) +
               std::to_string(T[2] + 1);
        frame_.u = ray;
        frame_.a = normalized(azimuth_ref - dot(azimuth_ref, ray) * ray);
        frame_.b = cross(ray, frame_.a);
    }

    Vec3 center() const { return (1.0 - 2.0 * r_) * frame_.u; }

    Vec3 point(double s, double t) const override {
        return frame_.to_world(valley_point(r_, 2.0 * kPi * s, t));
    }
    Vec3 unit_normal(double s, double t) const override {
        const Vec3 p = valley_point(r_, 2.0 * kPi * s, t);
        return frame_.to_world(valley_normal(r_, p));
    }

    int triple() const { return triple_; }

private:
    int triple_;
    double r_;
    ArcEndFrame frame_;
};

struct SeamSample {
    std::string seam;
    double max_position_gap = 0.0;
    double max_normal_angle = 0.0;  // radians
};

struct GoodnormalsReport {
    double min_margin = 0.0;          // min of n_ij . nu over off-curve samples
    double max_on_curve = 0.0;        // max |n_ij . nu| on gamma_ij
    double min_margin_slope = 0.0;    // min of margin / dist over near-curve samples
    int samples = 0;
    bool pass = false;
};

struct AssembledSurface {
    DomainSpec spec;
    std::vector<std::shared_ptr<SurfacePatch>> patches;
    std::vector<SeamSample> seams;

    const TroughPatch* trough(int i, int j) const {
        for (const auto& p : patches)
            if (p->kind == PatchKind::trough) {
                auto* t = static_cast<const TroughPatch*>(p.get());
                if (t->arc().i == i && t->arc().j == j) return t;
            }
        return nullptr;
    }
    const ValleyPatch* valley(int triple) const {
        for (const auto& p : patches)
            if (p->kind == PatchKind::valley) {
                auto* v = static_cast<const ValleyPatch*>(p.get());
                if (v->triple() == triple) return v;
            }
        return nullptr;
    }
};

namespace detail {

// Pairwise footprint-disjointness checks; throws PatchOverlap.
inline void check_footprints(const TetrahedralCone& cone, double r_star) {
    // Collar wedges around each junction: the rim occupies azimuthal width
    // +/- asin(1/2) = 30 deg per incident arc.
    for (int t = 0; t < 4; ++t) {
        const auto& T = kTriples[t];
        const Vec3 u = cone.junction_ray(T[0], T[1], T[2]);
        std::array<Vec3, 3> dirs{};
        const std::array<std::array<int, 2>, 3> pairs{{{T[0], T[1]}, {T[0], T[2]}, {T[1], T[2]}}};
        for (int a = 0; a < 3; ++a) {
            const int other = T[0] + T[1] + T[2] - pairs[a][0] - pairs[a][1];
            const Vec3 v = cone.junction_ray(pairs[a][0], pairs[a][1], other);
            Vec3 d = v - dot(v, u) * u;
            dirs[a] = d / norm(d);
        }
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const double ang = std::acos(std::clamp(dot(dirs[a], dirs[b]), -1.0, 1.0));
                if (ang <= kPi / 3.0 + 1e-9) {
                    std::ostringstream os;
                    os << "trough wedges at junction " << t << " overlap (separation "
                       << ang * 180.0 / kPi << " deg <= 60 deg); reduce r_star";
                    throw PatchOverlap(os.str());
                }
            }
    }
    // Each arc must be long enough to host a trough between its two collars.
    for (const auto& pr : kPairs) {
        const ArcGeometry arc = make_arc_geometry(cone, pr[0], pr[1], r_star);
        if (arc.theta_total <= 2.0 * arc.theta_clear + 1e-9) {
            std::ostringstream os;
            os << "arc " << pr[0] + 1 << pr[1] + 1 << " spans " << arc.theta_total
               << " rad, too short for clearance " << arc.theta_clear << " at both ends";
            throw PatchOverlap(os.str());
        }
    }
}

inline double seam_angle(const Vec3& n1, const Vec3& n2) {
    return std::acos(std::clamp(dot(n1, n2), -1.0, 1.0));
}

}  // namespace detail

inline AssembledSurface assemble_surface(const DomainSpec& spec, int seam_samples = 1000) {
    detail::check_footprints(spec.cone, spec.r_star);

    AssembledSurface surf;
    surf.spec = spec;

    std::array<std::shared_ptr<ValleyPatch>, 4> valleys{};
    std::vector<std::array<std::shared_ptr<CollarPatch>, 2>> collars;
    for (const auto& pr : kPairs) {
        const ArcGeometry arc = make_arc_geometry(spec.cone, pr[0], pr[1], spec.r_star);
        auto trough = std::make_shared<TroughPatch>(arc, spec.r_star);
        surf.patches.push_back(trough);
        std::array<std::shared_ptr<CollarPatch>, 2> ends{};
        for (int e = 0; e < 2; ++e) {
            ends[e] = std::make_shared<CollarPatch>(arc, e, spec.r_star);
            surf.patches.push_back(ends[e]);
            const int tr = arc.junction[e];
            if (!valleys[tr]) {
                const auto& T = kTriples[tr];
                const Vec3 ray = spec.cone.junction_ray(T[0], T[1], T[2]);
                valleys[tr] = std::make_shared<ValleyPatch>(tr, ray, arc.frame[e].a, spec.r_star);
            }
        }
        collars.push_back(ends);
    }
    for (auto& v : valleys) surf.patches.push_back(v);

    // Seam report: trough <-> collar (positions + normals at matched
    // parameters) and collar <-> valley (distance to the hemisphere plus
    // normal agreement, frame independent).
    int arc_idx = 0;
    for (const auto& pr : kPairs) {
        const auto* trough = surf.trough(pr[0], pr[1]);
        for (int e = 0; e < 2; ++e) {
            const auto& collar = collars[arc_idx][e];
            SeamSample tc{collar->name + "|trough", 0.0, 0.0};
            SeamSample cv{collar->name + "|valley", 0.0, 0.0};
            const auto* valley = surf.valley(collar->arc().junction[e]);
            const Vec3 vc = valley->center();
            for (int k = 0; k <= seam_samples; ++k) {
                const double s = static_cast<double>(k) / seam_samples;
                const double y = collar->y_of(s);
                // Trough side: theta measured from this end is theta_clear.
                const double theta = e == 0 ? trough->arc().theta_clear
                                            : trough->arc().theta_total - trough->arc().theta_clear;
                const Vec3 pt = trough->point_at(theta, e == 0 ? y : -y);
                const Vec3 nt = trough->normal_at(theta, e == 0 ? y : -y);
                const Vec3 pc = collar->point(s, 1.0);
                const Vec3 nc = collar->unit_normal(s, 1.0);
                tc.max_position_gap = std::max(tc.max_position_gap, norm(pt - pc));
                tc.max_normal_angle = std::max(tc.max_normal_angle, detail::seam_angle(nt, nc));

                const Vec3 pv = collar->point(s, 0.0);
                const Vec3 nv = collar->unit_normal(s, 0.0);
                const Vec3 to_center = vc - pv;
                cv.max_position_gap =
                    std::max(cv.max_position_gap, std::abs(norm(to_center) - spec.r_star));
                cv.max_normal_angle = std::max(
                    cv.max_normal_angle, detail::seam_angle(to_center / norm(to_center), nv));
            }
            surf.seams.push_back(tc);
            surf.seams.push_back(cv);
        }
        ++arc_idx;
    }
    return surf;
}

// Verify the sign condition n_ij . nu >= 0 near each gamma_ij, sampling the
// trough, both collars and the valley meridian band of each arc.
inline std::array<std::array<GoodnormalsReport, 4>, 4> goodnormals_check(
    const AssembledSurface& surf, int n_along = 64, int n_across = 32, double on_curve_tol = 1e-8,
    bool throw_on_violation = true) {
    std::array<std::array<GoodnormalsReport, 4>, 4> reports{};
    const double r = surf.spec.r_star;
    const double eta = surf.spec.eta;

    for (const auto& pr : kPairs) {
        const int i = pr[0], j = pr[1];
        GoodnormalsReport rep;
        rep.min_margin = 1e300;
        rep.min_margin_slope = 1e300;
        const Vec3 nij = surf.spec.cone.normal(i, j);

        // The condition reads n_ij . nu > 0 on the S_i side (where n_ij . p < 0)
        // and symmetrically n_ji . nu > 0 on the S_j side, so the one-sided
        // margin is -sign(n_ij . p) (n_ij . nu).
        auto record = [&](const Vec3& p, const Vec3& nu, double y_offset) {
            const double along = dot(nij, nu);
            if (y_offset == 0.0) {
                rep.max_on_curve = std::max(rep.max_on_curve, std::abs(along));
            } else {
                const double margin = dot(nij, p) < 0.0 ? along : -along;
                rep.min_margin = std::min(rep.min_margin, margin);
                if (std::abs(y_offset) < 0.5 * eta)
                    rep.min_margin_slope = std::min(rep.min_margin_slope, margin / std::abs(y_offset));
            }
            ++rep.samples;
        };

        const auto* trough = surf.trough(i, j);
        const auto& arc = trough->arc();
        for (int a = 0; a <= n_along; ++a) {
            const double theta =
                arc.theta_clear + (arc.theta_total - 2.0 * arc.theta_clear) * a / n_along;
            record(trough->point_at(theta, 0.0), trough->normal_at(theta, 0.0), 0.0);
            for (int c = 1; c <= n_across; ++c) {
                const double y = std::min(eta, 0.5 * r * 0.999) * c / n_across;
                record(trough->point_at(theta, +y), trough->normal_at(theta, +y), +y);
                record(trough->point_at(theta, -y), trough->normal_at(theta, -y), -y);
            }
        }
        for (const auto& patch : surf.patches) {
            if (patch->kind != PatchKind::interpolation) continue;
            const auto* collar = static_cast<const CollarPatch*>(patch.get());
            if (collar->arc().i != i || collar->arc().j != j) continue;
            const ArcEndFrame& f = collar->arc().frame[collar->end()];
            for (int a = 0; a <= n_along / 4; ++a) {
                const double t = static_cast<double>(a) / (n_along / 4);
                record(f.to_world(collar->canonical().point(0.0, t)),
                       f.to_world(collar->canonical().unit_normal(0.0, t)), 0.0);
                for (int c = 1; c <= n_across; ++c) {
                    const double y = std::min(eta, 0.5 * r * 0.999) * c / n_across;
                    record(f.to_world(collar->canonical().point(+y, t)),
                           f.to_world(collar->canonical().unit_normal(+y, t)), +y);
                    record(f.to_world(collar->canonical().point(-y, t)),
                           f.to_world(collar->canonical().unit_normal(-y, t)), -y);
                }
            }
        }
        // Valley band: points within the strip |n_ij . p| < eta around the
        // (i,j) meridian; nu = (center - p)/r_star.
        for (int e = 0; e < 2; ++e) {
            const auto* valley = surf.valley(arc.junction[e]);
            const Vec3 vc = valley->center();
            const ArcEndFrame& f = arc.frame[e];
            for (int a = 0; a <= n_along / 4; ++a) {
                const double t = 0.999 * a / (n_along / 4);
                for (int c = 0; c <= n_across; ++c) {
                    const double y = std::min(eta, 0.5 * r * 0.999) * c / n_across;
                    for (const double sign : {+1.0, -1.0}) {
                        if (c == 0 && sign < 0) continue;
                        // Canonical hemisphere point at transverse offset y.
                        const double rho = std::sqrt(r * r - y * y);
                        const double theta = 0.5 * kPi * t;
                        const Vec3 pl{rho * std::cos(theta), sign * y,
                                      (1.0 - 2.0 * r) - rho * std::sin(theta)};
                        const Vec3 p = f.to_world(pl);
                        const Vec3 nu = (vc - p) / r;
                        record(p, nu, c == 0 ? 0.0 : sign * y);
                    }
                }
            }
        }
        rep.pass = rep.min_margin > 0.0 && rep.max_on_curve < on_curve_tol;
        reports[i][j] = rep;
        reports[j][i] = rep;
        if (!rep.pass && throw_on_violation) {
            std::ostringstream os;
            os << "goodnormals violated for pair (" << i + 1 << "," << j + 1 << "): min margin "
               << rep.min_margin << ", on-curve max " << rep.max_on_curve;
            throw GoodnormalsViolation(os.str());
        }
    }
    return reports;
}

}  // namespace qj
