// Canonical building blocks of the perturbed-sphere boundary, all expressed
// in the frame where the junction ray is +z and the reference interface arc
// lies in the xz-plane:
//
//   * sphere trough  F(x,y): a circular gutter of radius r_* whose bottom is
//     the unit-sphere arc (x, 0, sqrt(1-x^2)); cross sections displace
//     radially by the arc depth b(y) = r_* - sqrt(r_*^2 - y^2).
//   * interpolation  G(y,z): the same gutter cross-section carried along a
//     planar centerline (g(z), 0, z) whose in-plane normal tilts by
//     beta(z) = atan(g'(z)).
//   * collar: the C^1 bridge between the hemisphere rim and the start of the
//     sphere trough. A graph centerline cannot meet both end tangents (the
//     curve must overshoot in z), so the collar carries the gutter
//     cross-section along a Hermite centerline with a rotating frame.
//   * valley: the lower hemisphere of radius r_* centered at (0,0,1-2r_*).
//
// All patches share the exact unit outward normal law
//   nu = (D - b'(y) e_2) / sqrt(1 + b'(y)^2),   nu^(2) = -y / r_*,
// where D is the in-plane displacement direction of the cross-section.
#pragma once

#include <cmath>
#include <sstream>

#include "quadjunction/errors.hpp"
#include "quadjunction/geometry.hpp"

namespace qj {

// Depth of the gutter cross-section at transverse offset y, |y| < r_*.
inline double arc_depth(double r_star, double y) {
    return r_star - std::sqrt(r_star * r_star - y * y);
}
inline double arc_depth_prime(double r_star, double y) {
    return y / std::sqrt(r_star * r_star - y * y);
}

namespace detail {
// Closed at the seams: the collar attaches at x = 2 r_* and the strip edge
// |y| = r_*/2 is finite.
inline void require_trough_params(double r_star, double x, double x_bar, double y) {
    if (!(x >= 2.0 * r_star && x <= x_bar)) {
        std::ostringstream os;
        os << "trough parameter x = " << x << " outside [" << 2.0 * r_star << ", " << x_bar << "]";
        throw DomainError(os.str());
    }
    if (!(std::abs(y) <= 0.5 * r_star)) {
        std::ostringstream os;
        os << "trough parameter y = " << y << " outside [-r_*/2, r_*/2] with r_* = " << r_star;
        throw DomainError(os.str());
    }
}
}  // namespace detail

// F(x,y). With tan(alpha) = -x/sqrt(1-x^2) and the branch sin(alpha) = -x,
// cos(alpha) = sqrt(1-x^2), the rotated-and-translated arc collapses to a
// radial displacement of the sphere point.
inline Vec3 trough_point(double r_star, double x, double x_bar, double y) {
    detail::require_trough_params(r_star, x, x_bar, y);
    const double w = std::sqrt(1.0 - x * x);
    const double b = arc_depth(r_star, y);
    return {x + b * x, y, w + b * w};
}

// F_x x F_y from the analytic partial derivatives (outward orientation).
inline Vec3 trough_cross_product(double r_star, double x, double x_bar, double y) {
    detail::require_trough_params(r_star, x, x_bar, y);
    const double w = std::sqrt(1.0 - x * x);
    const double b = arc_depth(r_star, y);
    const double bp = arc_depth_prime(r_star, y);
    const Vec3 Fx{1.0 + b, 0.0, -(1.0 + b) * x / w};
    const Vec3 Fy{bp * x, 1.0, bp * w};
    return cross(Fx, Fy);
}

// Closed form of the second component of F_x x F_y (unnormalized, outward).
inline double trough_cross_y_closed_form(double r_star, double x, double y) {
    const double s = std::sqrt(r_star * r_star - y * y);
    return -y * (1.0 + r_star - s) / (s * std::sqrt(1.0 - x * x));
}

// Second component of the unit outward normal; equals -y/r_* identically.
inline double trough_normal_y(double r_star, double x, double x_bar, double y) {
    const Vec3 cp = trough_cross_product(r_star, x, x_bar, y);
    return cp.y / norm(cp);
}

// Monotone convex interpolating function on [1-2r_*, sqrt(1-4r_*^2)] with
// g(left) = r_*, g(right) = 2 r_*, g'(left) = 0, g' > 0 and g'' > 0 inside.
// (The C^1 junction with the sphere trough is handled by the collar patch,
// not by this graph; no graph can carry that tangency.)
class Interpolant {
public:
    explicit Interpolant(double r_star)
        : r_(r_star), zl_(1.0 - 2.0 * r_star), zr_(std::sqrt(1.0 - 4.0 * r_star * r_star)) {
        if (!(zl_ < zr_)) throw InterpolantInfeasible("degenerate interpolation interval");
        // Sampled monotonicity/convexity check for the chosen family.
        for (int k = 1; k < 64; ++k) {
            const double z = zl_ + (zr_ - zl_) * k / 64.0;
            if (!(dg(z) > 0.0) || !(ddg(z) > 0.0))
                throw InterpolantInfeasible("interpolant violates g' > 0, g'' > 0");
        }
    }

    double z_left() const { return zl_; }
    double z_right() const { return zr_; }

    double g(double z) const {
        const double s = (z - zl_) / (zr_ - zl_);
        return r_ * (1.0 + s * s);
    }
    double dg(double z) const {
        const double s = (z - zl_) / (zr_ - zl_);
        return 2.0 * r_ * s / (zr_ - zl_);
    }
    double ddg(double) const { return 2.0 * r_ / ((zr_ - zl_) * (zr_ - zl_)); }

private:
    double r_, zl_, zr_;
};

// G(y,z) = (g(z) - b(y) cos(beta), y, z + b(y) sin(beta)), tan(beta) = g'(z).
inline Vec3 interp_point(const Interpolant& g, double r_star, double y, double z) {
    if (!(z >= g.z_left() && z <= g.z_right())) {
        std::ostringstream os;
        os << "interpolation parameter z = " << z << " outside [" << g.z_left() << ", "
           << g.z_right() << "]";
        throw DomainError(os.str());
    }
    if (!(std::abs(y) < 0.5 * r_star)) throw DomainError("interpolation parameter |y| >= r_*/2");
    const double beta = std::atan(g.dg(z));
    const double b = arc_depth(r_star, y);
    return {g.g(z) - b * std::cos(beta), y, z + b * std::sin(beta)};
}

// Second component of G_z x G_y (unnormalized, outward):
//   -y [ -b(y) beta'(z) + cos(beta) + g'(z) sin(beta) ] / sqrt(r_*^2 - y^2)
// with b(y) = -r_* + sqrt(r_*^2 - y^2).
inline double interp_cross_y_closed_form(const Interpolant& g, double r_star, double y, double z) {
    const double gp = g.dg(z);
    const double beta = std::atan(gp);
    const double beta_prime = g.ddg(z) / (1.0 + gp * gp);
    const double b = -arc_depth(r_star, y);
    const double bracket = -b * beta_prime + std::cos(beta) + gp * std::sin(beta);
    return -y * bracket / std::sqrt(r_star * r_star - y * y);
}

// Lower hemisphere of radius r_* centered at (0,0,1-2r_*); azimuth phi and
// polar offset t in [0,1] (t = 1 is the deepest point, t = 0 the rim).
inline Vec3 valley_point(double r_star, double phi, double t) {
    const double c = 1.0 - 2.0 * r_star;
    const double theta = 0.5 * kPi * t;  // 0 at rim plane, pi/2 at the pole
    return {r_star * std::cos(theta) * std::cos(phi), r_star * std::cos(theta) * std::sin(phi),
            c - r_star * std::sin(theta)};
}

// Outward normal on the valley points toward the hemisphere center.
inline Vec3 valley_normal(double r_star, const Vec3& p) {
    const Vec3 center{0.0, 0.0, 1.0 - 2.0 * r_star};
    return (center - p) / r_star;
}

// C^1 collar between the hemisphere rim and the sphere trough.
//
// Centerline: cubic Hermite in the xz-plane from P1 = (r_*, 1-2r_*) with
// vertical tangent to P2 = (2r_*, sqrt(1-4r_*^2)) with the sphere-trough
// tangent (sqrt(1-4r_*^2), -2r_*). The gutter cross-section is carried along
// the left normal D of the unit tangent T, so both end seams match their
// neighbors' cross-sections exactly and the patch is C^1 against both.
class Collar {
public:
    explicit Collar(double r_star, double tangent_scale = 1.0) : r_(r_star) {
        const double w1 = std::sqrt(1.0 - 4.0 * r_star * r_star);
        p1_ = {r_star, 1.0 - 2.0 * r_star};
        p2_ = {2.0 * r_star, w1};
        t1_ = {0.0, 1.0};
        t2_ = {w1, -2.0 * r_star};  // unit by construction
        const double chord = std::hypot(p2_[0] - p1_[0], p2_[1] - p1_[1]);
        m_ = tangent_scale * chord;
        validate();
    }

    // Patch map; y in (-r_*/2, r_*/2), t in [0, 1] (t = 0 at the hemisphere rim).
    Vec3 point(double y, double t) const {
        const auto [cx, cz] = center(t);
        const auto [dx, dz] = disp_dir(t);
        const double b = arc_depth(r_, y);
        return {cx + b * dx, y, cz + b * dz};
    }

    // Unit outward normal: (D - b'(y) e_2)/sqrt(1 + b'^2).
    Vec3 unit_normal(double y, double t) const {
        const auto [dx, dz] = disp_dir(t);
        const double bp = arc_depth_prime(r_, y);
        const double s = std::sqrt(1.0 + bp * bp);
        return {dx / s, -bp / s, dz / s};
    }

    std::array<double, 2> center(double t) const {
        const double h00 = (2.0 * t - 3.0) * t * t + 1.0;
        const double h10 = ((t - 2.0) * t + 1.0) * t;
        const double h01 = (3.0 - 2.0 * t) * t * t;
        const double h11 = (t - 1.0) * t * t;
        return {h00 * p1_[0] + h10 * m_ * t1_[0] + h01 * p2_[0] + h11 * m_ * t2_[0],
                h00 * p1_[1] + h10 * m_ * t1_[1] + h01 * p2_[1] + h11 * m_ * t2_[1]};
    }

    std::array<double, 2> center_velocity(double t) const {
        const double d00 = 6.0 * t * (t - 1.0);
        const double d10 = (3.0 * t - 4.0) * t + 1.0;
        const double d01 = -6.0 * t * (t - 1.0);
        const double d11 = (3.0 * t - 2.0) * t;
        return {d00 * p1_[0] + d10 * m_ * t1_[0] + d01 * p2_[0] + d11 * m_ * t2_[0],
                d00 * p1_[1] + d10 * m_ * t1_[1] + d01 * p2_[1] + d11 * m_ * t2_[1]};
    }

    // Displacement direction D(t): left normal of the unit tangent.
    std::array<double, 2> disp_dir(double t) const {
        const auto [vx, vz] = center_velocity(t);
        const double s = std::hypot(vx, vz);
        return {-vz / s, vx / s};
    }

private:
    void validate() const {
        // The patch is an immersion iff speed + b * beta' > 0; beta' > 0 holds
        // for the default tangent scale over the admissible r_* range, so a
        // positive-speed sweep suffices.
        double prev_angle = std::atan2(t1_[0], t1_[1]);
        for (int k = 0; k <= 256; ++k) {
            const double t = k / 256.0;
            const auto [vx, vz] = center_velocity(t);
            const double speed = std::hypot(vx, vz);
            if (!(speed > 1e-12)) throw InterpolantInfeasible("collar centerline stalls");
            const double ang = std::atan2(vx, vz);
            if (k > 0 && ang + 1e-9 < prev_angle)
                throw InterpolantInfeasible("collar centerline turning is not monotone");
            prev_angle = ang;
        }
    }

    double r_, m_;
    std::array<double, 2> p1_, p2_, t1_, t2_;
};

}  // namespace qj
