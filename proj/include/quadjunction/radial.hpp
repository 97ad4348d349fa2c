// Radial graph rho: S^2 -> (0, 1+lambda] describing the boundary of Omega.
// Inside feature footprints (valley pits, trough strips, collar bands) the
// graph inverts the exact patches; outside, each feature rises to the outer
// sphere through a quintic skirt with matched value and slope, and the final
// graph is the pointwise minimum of all candidates. The exact patches are
// not radial graphs near the valley rims (the collar wall overhangs
// slightly); there the outermost sheet is used, an O(r_*^2) approximation
// affecting only the occupancy field, never the exact-patch checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "quadjunction/domain.hpp"

namespace qj {

namespace detail {

// Quintic Hermite on [0,1] with p(0) = v0, p'(0) = s0, p(1) = v1, p'(1) = 0
// and zero second derivative at both ends.
inline double quintic_rise(double t, double v0, double s0, double v1) {
    if (t <= 0.0) return v0;
    if (t >= 1.0) return v1;
    const double D = v1 - v0;
    const double c3 = 10.0 * D - 6.0 * s0;
    const double c4 = 8.0 * s0 - 15.0 * D;
    const double c5 = 6.0 * D - 3.0 * s0;
    return v0 + s0 * t + ((c5 * t + c4) * t + c3) * t * t * t;
}

}  // namespace detail

class RadialField {
public:
    explicit RadialField(const AssembledSurface& surf)
        : spec_(surf.spec),
          r_(surf.spec.r_star),
          cap_(1.0 + surf.spec.lambda),
          psi_rim_(std::atan2(surf.spec.r_star, 1.0 - 2.0 * surf.spec.r_star)),
          collar_(surf.spec.r_star) {
        for (const auto& pr : kPairs)
            arcs_.push_back(make_arc_geometry(spec_.cone, pr[0], pr[1], r_));
        for (int t = 0; t < 4; ++t) {
            const auto& T = kTriples[t];
            rays_[t] = spec_.cone.junction_ray(T[0], T[1], T[2]);
        }
        theta_clear_ = std::asin(2.0 * r_);
        // Valley skirt width: fully risen before the trough clearance angle.
        skirt_width_ = 0.95 * (theta_clear_ - psi_rim_);
        strip_skirt_width_ = 0.3;  // transverse rise, radians
    }

    double cap() const { return cap_; }

    // dir need not be normalized.
    double rho(const Vec3& direction) const {
        const Vec3 dir = normalized(direction);
        double best = cap_;

        for (int t = 0; t < 4; ++t) {
            const double c = std::clamp(dot(dir, rays_[t]), -1.0, 1.0);
            const double psi = std::acos(c);
            if (psi <= psi_rim_) return pit_profile(psi);  // footprints are disjoint
            if (psi < psi_rim_ + skirt_width_) {
                const double v0 = pit_profile(psi_rim_);
                const double s0 = pit_slope_at_rim() * skirt_width_;
                best = std::min(best,
                                detail::quintic_rise((psi - psi_rim_) / skirt_width_, v0, s0, cap_));
            }
        }

        for (const auto& arc : arcs_) {
            best = std::min(best, trough_candidate(arc, dir));
            for (int e = 0; e < 2; ++e) best = std::min(best, collar_candidate(arc, e, dir));
        }
        return best;
    }

    Vec3 surface_point(const Vec3& dir) const { return rho(dir) * normalized(dir); }

    // Outward unit normal of the graph surface at direction dir, from finite
    // differences of rho over the tangent plane.
    Vec3 outward_normal(const Vec3& direction, double fd = 1e-5) const {
        const Vec3 dir = normalized(direction);
        Vec3 e1 = std::abs(dir.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        e1 = normalized(e1 - dot(e1, dir) * dir);
        const Vec3 e2 = cross(dir, e1);
        const double r0 = rho(dir);
        const double d1 = (rho(dir + fd * e1) - rho(dir - fd * e1)) / (2.0 * fd);
        const double d2 = (rho(dir + fd * e2) - rho(dir - fd * e2)) / (2.0 * fd);
        return normalized(dir - (d1 / r0) * e1 - (d2 / r0) * e2);
    }

private:
    // Pit profile: first intersection of the ray at polar angle psi with the
    // valley sphere (radius r_* about (1-2r_*) u).
    double pit_profile(double psi) const {
        const double a = 1.0 - 2.0 * r_;
        const double s = a * std::sin(psi);
        return a * std::cos(psi) - std::sqrt(std::max(r_ * r_ - s * s, 0.0));
    }
    double pit_slope_at_rim() const {
        const double h = 1e-6;
        return (pit_profile(psi_rim_) - pit_profile(psi_rim_ - h)) / h;
    }

    // Solve y = (1 + b(y)) tan(phi) for the trough transverse coordinate.
    double solve_strip_y(double tan_phi) const {
        double y = std::clamp(tan_phi, -0.999 * r_, 0.999 * r_);
        for (int it = 0; it < 40; ++it) {
            const double B = arc_depth(r_, y);
            const double f = y - (1.0 + B) * tan_phi;
            const double fp = 1.0 - tan_phi * arc_depth_prime(r_, y);
            const double step = f / fp;
            y -= step;
            y = std::clamp(y, -0.9999 * r_, 0.9999 * r_);
            if (std::abs(step) < 1e-14) break;
        }
        return y;
    }

    double trough_candidate(const ArcGeometry& arc, const Vec3& dir) const {
        const double zeta = dot(dir, arc.frame[0].u);
        const double xi = dot(dir, arc.frame[0].a);
        const double ups = dot(dir, arc.frame[0].b);
        const double theta = std::atan2(xi, zeta);
        if (theta < arc.theta_clear || theta > arc.theta_total - arc.theta_clear) return cap_;
        const double inplane = std::hypot(zeta, xi);
        const double tan_phi = ups / inplane;
        const double y = solve_strip_y(tan_phi);
        const auto radius_of = [&](double yy) {
            const double B = arc_depth(r_, yy);
            return std::hypot(1.0 + B, yy);
        };
        if (std::abs(y) <= 0.5 * r_) return radius_of(y);
        // Transverse skirt from the strip edge.
        const double ye = std::copysign(0.5 * r_, y);
        const double Be = arc_depth(r_, ye);
        const double phi = std::atan(std::abs(tan_phi));
        const double phi_e = std::atan2(0.5 * r_, 1.0 + Be);
        const double rho_e = radius_of(ye);
        // d rho / d phi at the edge via the chain rule through y.
        const double drho_dy = ((1.0 + Be) * arc_depth_prime(r_, std::abs(ye)) + std::abs(ye)) / rho_e;
        const double dphi_dy =
            (1.0 + Be - std::abs(ye) * arc_depth_prime(r_, std::abs(ye))) / (rho_e * rho_e);
        const double slope = drho_dy / dphi_dy;
        if (phi >= phi_e + strip_skirt_width_) return cap_;
        return detail::quintic_rise((phi - phi_e) / strip_skirt_width_, rho_e,
                                    slope * strip_skirt_width_, cap_);
    }

    double collar_candidate(const ArcGeometry& arc, int end, const Vec3& dir) const {
        const ArcEndFrame& f = arc.frame[end];
        const Vec3 local = f.to_local(dir);
        const double psi = std::atan2(std::hypot(local.x, local.y), local.z);
        if (psi < 0.9 * psi_rim_ || psi > theta_clear_ + 0.2) return cap_;
        if (local.x <= 0.0) return cap_;  // opposite azimuthal half

        // Gauss-Newton on (y, t): match the patch direction to `local`.
        double y = std::clamp(local.y, -0.45 * r_, 0.45 * r_);
        double t = std::clamp((psi - psi_rim_) / std::max(theta_clear_ - psi_rim_, 1e-9), 0.05, 0.95);
        bool ok = false;
        for (int it = 0; it < 30; ++it) {
            const Vec3 p = collar_.point(y, t);
            const Vec3 ph = normalized(p);
            const Vec3 res = ph - normalized(Vec3{local.x, local.y, local.z});
            if (norm(res) < 1e-13) {
                ok = true;
                break;
            }
            const double hy = 1e-7, ht = 1e-7;
            const Vec3 jy = (normalized(collar_.point(y + hy, t)) - ph) / hy;
            const Vec3 jt = (normalized(collar_.point(y, t + ht)) - ph) / ht;
            // Normal equations of the 3x2 system.
            const double a11 = dot(jy, jy), a12 = dot(jy, jt), a22 = dot(jt, jt);
            const double b1 = -dot(jy, res), b2 = -dot(jt, res);
            const double d = a11 * a22 - a12 * a12;
            if (std::abs(d) < 1e-30) break;
            double dy = (b1 * a22 - b2 * a12) / d;
            double dt = (b2 * a11 - b1 * a12) / d;
            const double lim = 0.4;
            dy = std::clamp(dy, -lim * r_, lim * r_);
            dt = std::clamp(dt, -lim, lim);
            y = std::clamp(y + dy, -0.9999 * r_, 0.9999 * r_);
            t = std::clamp(t + dt, 0.0, 1.0);
        }
        if (!ok) {
            const Vec3 p = collar_.point(y, t);
            if (norm(normalized(p) - normalized(local)) > 1e-9) return cap_;
        }
        if (std::abs(y) <= 0.5 * r_) return norm(collar_.point(y, t));
        // Transverse skirt from the clamped strip edge.
        const double ye = std::copysign(0.5 * r_, y);
        const Vec3 pe = collar_.point(ye, t);
        const double rho_e = norm(pe);
        const double h = 1e-5;
        const Vec3 pe2 = collar_.point(ye - std::copysign(h, ye), t);
        const double dangle = std::acos(std::clamp(dot(normalized(pe), normalized(pe2)), -1.0, 1.0));
        const double slope = dangle > 0.0 ? (rho_e - norm(pe2)) / dangle : 0.0;
        const double off = std::acos(std::clamp(dot(normalized(pe), normalized(local)), -1.0, 1.0));
        if (off >= strip_skirt_width_) return cap_;
        return detail::quintic_rise(off / strip_skirt_width_, rho_e, slope * strip_skirt_width_,
                                    cap_);
    }

    DomainSpec spec_;
    double r_, cap_, psi_rim_, theta_clear_ = 0.0, skirt_width_ = 0.0, strip_skirt_width_ = 0.0;
    Collar collar_;
    std::vector<ArcGeometry> arcs_;
    std::array<Vec3, 4> rays_{};
};

}  // namespace qj
