#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quadjunction/trough.hpp"

using namespace qj;

namespace {

// Finite-difference cross product of a patch map, for oracle comparisons.
template <typename F>
Vec3 fd_cross(const F& f, double s, double t, double h) {
    const Vec3 ds = (f(s + h, t) - f(s - h, t)) / (2.0 * h);
    const Vec3 dt = (f(s, t + h) - f(s, t - h)) / (2.0 * h);
    return cross(ds, dt);
}

}  // namespace

TEST_CASE("trough centerline rides the unit sphere") {
    const double r = 0.25, xb = 0.9;
    for (double x : {0.51, 0.6, 0.75, 0.89}) {
        const Vec3 p = trough_point(r, x, xb, 0.0);
        CHECK(p.x == x);
        CHECK(p.y == 0.0);
        CHECK(p.z == Catch::Approx(std::sqrt(1.0 - x * x)).margin(1e-15));
        CHECK(std::abs(norm(p) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(trough_point(r, 0.4, xb, 0.0), DomainError);   // x <= 2 r_*
    CHECK_THROWS_AS(trough_point(r, 0.6, xb, 0.2), DomainError);   // |y| >= r_*/2
    CHECK_THROWS_AS(trough_point(r, 0.95, xb, 0.0), DomainError);  // x >= x_bar
}

TEST_CASE("trough cross-section is the rigidly moved arc") {
    const double r = 0.25, xb = 0.9;
    const Vec3 p = trough_point(r, 0.5, xb, 0.1);
    const Vec3 base{0.5, 0.0, std::sqrt(0.75)};
    const double depth = r - std::sqrt(r * r - 0.01);
    // The displacement splits into the in-plane arc depth and the y offset.
    const Vec3 d = p - base;
    CHECK(std::hypot(d.x, d.z) == Catch::Approx(depth).margin(1e-14));
    CHECK(d.y == Catch::Approx(0.1));
    CHECK(norm(d) == Catch::Approx(std::sqrt(depth * depth + 0.01)).margin(1e-14));

    // d F / d y at y = 0 is the transverse unit vector.
    const double h = 1e-6;
    const Vec3 dy = (trough_point(r, 0.5, xb, h) - trough_point(r, 0.5, xb, -h)) / (2.0 * h);
    CHECK(norm(dy - Vec3{0, 1, 0}) < 1e-9);
}

TEST_CASE("trough normal second component: closed form vs numeric cross product") {
    const double r = 0.25, xb = 0.999;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dx(2.0 * r + 1e-6, xb - 1e-6);
    std::uniform_real_distribution<double> dy(-0.5 * r + 1e-9, 0.5 * r - 1e-9);
    double max_dev = 0.0, max_norm_dev = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double x = dx(rng), y = dy(rng);
        const Vec3 cp = trough_cross_product(r, x, xb, y);
        max_dev = std::max(max_dev, std::abs(cp.y - trough_cross_y_closed_form(r, x, y)));
        // The unit normal's second component collapses to -y/r_*.
        max_norm_dev = std::max(max_norm_dev, std::abs(cp.y / norm(cp) + y / r));
    }
    CHECK(max_dev < 1e-10);
    CHECK(max_norm_dev < 1e-12);

    CHECK(trough_normal_y(r, 0.6, xb, 0.0) == 0.0);
    CHECK(trough_normal_y(r, 0.6, xb, 0.1) < 0.0);
    CHECK(trough_normal_y(r, 0.6, xb, -0.1) > 0.0);
    CHECK(trough_normal_y(r, 0.6, xb, 0.1) ==
          Catch::Approx(-trough_normal_y(r, 0.6, xb, -0.1)).margin(1e-15));

    // Against a finite-difference cross product as an independent route.
    auto F = [&](double x, double y) { return trough_point(r, x, xb, y); };
    const Vec3 fd = fd_cross(F, 0.6, 0.1, 1e-6);
    CHECK(std::abs(fd.y - trough_cross_y_closed_form(r, 0.6, 0.1)) < 1e-8);
}

TEST_CASE("interpolant endpoint data and monotonicity") {
    const double r = 0.15;
    const Interpolant g(r);
    CHECK(g.z_left() == Catch::Approx(1.0 - 2.0 * r));
    CHECK(g.z_right() == Catch::Approx(std::sqrt(1.0 - 4.0 * r * r)));
    CHECK(g.g(g.z_left()) == Catch::Approx(r));
    CHECK(g.g(g.z_right()) == Catch::Approx(2.0 * r));
    CHECK(g.dg(g.z_left()) == 0.0);
    const double zmid = 0.5 * (g.z_left() + g.z_right());
    CHECK(g.g(zmid) > r);
    CHECK(g.g(zmid) < 2.0 * r);
    // Sampled monotonicity.
    double prev = g.g(g.z_left());
    for (int k = 1; k <= 10000; ++k) {
        const double z = g.z_left() + (g.z_right() - g.z_left()) * k / 10000.0;
        CHECK(g.g(z) >= prev);
        prev = g.g(z);
    }
}

TEST_CASE("interpolation patch gluing and normal formula") {
    const double r = 0.15;
    const Interpolant g(r);

    // At z = 1 - 2 r_* the patch traces the hemisphere rim.
    for (double y : {-0.07, -0.02, 0.0, 0.03, 0.0749}) {
        const Vec3 p = interp_point(g, r, y, g.z_left());
        CHECK(norm(p - Vec3{std::sqrt(r * r - y * y), y, 1.0 - 2.0 * r}) < 1e-12);
    }
    // y = 0 kills the displacement.
    for (double z : {g.z_left() + 0.01, 0.8, g.z_right() - 0.01}) {
        const Vec3 p = interp_point(g, r, 0.0, z);
        CHECK(norm(p - Vec3{g.g(z), 0.0, z}) < 1e-15);
    }
    // Closed-form (G_z x G_y)_2 vs finite-difference cross product.
    auto G = [&](double z, double y) { return interp_point(g, r, y, z); };
    double max_dev = 0.0;
    for (int a = 1; a < 20; ++a) {
        for (int b = -9; b <= 9; ++b) {
            const double z = g.z_left() + (g.z_right() - g.z_left()) * a / 20.0;
            const double y = 0.5 * r * b / 10.0;
            const Vec3 fd = fd_cross(G, z, y, 1e-5);
            max_dev = std::max(max_dev, std::abs(fd.y - interp_cross_y_closed_form(g, r, y, z)));
        }
    }
    CHECK(max_dev < 1e-8);
}

TEST_CASE("valley hemisphere") {
    const double r = 0.15;
    const Vec3 deepest = valley_point(r, 0.3, 1.0);
    CHECK(norm(deepest - Vec3{0, 0, 1.0 - 3.0 * r}) < 1e-15);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dphi(0.0, 2.0 * kPi), dt(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const Vec3 p = valley_point(r, dphi(rng), dt(rng));
        // On the sphere of radius r_* about (0,0,1-2r_*), in the lower half.
        CHECK(std::abs(norm(p - Vec3{0, 0, 1.0 - 2.0 * r}) - r) < 1e-14);
        CHECK(p.z <= 1.0 - 2.0 * r + 1e-15);
        const Vec3 nu = valley_normal(r, p);
        CHECK(std::abs(norm(nu) - 1.0) < 1e-14);
        CHECK(norm(nu - (Vec3{-p.x, -p.y, 1.0 - 2.0 * r - p.z} / r)) < 1e-14);
        if (p.y > 1e-12) CHECK(nu.y < 0.0);
        if (p.y < -1e-12) CHECK(nu.y > 0.0);
    }
}

TEST_CASE("collar bridges rim and trough with matching cross-sections") {
    for (double r : {0.05, 0.1, 0.15, 0.19}) {
        const Collar collar(r);
        const double w1 = std::sqrt(1.0 - 4.0 * r * r);
        for (double yf : {-0.49, -0.2, 0.0, 0.3, 0.49}) {
            const double y = yf * r;
            // t = 0: hemisphere rim.
            CHECK(norm(collar.point(y, 0.0) - Vec3{std::sqrt(r * r - y * y), y, 1.0 - 2.0 * r}) <
                  1e-12);
            // t = 1: sphere-trough cross-section at x = 2 r_*.
            const double b = arc_depth(r, y);
            CHECK(norm(collar.point(y, 1.0) - Vec3{(1.0 + b) * 2.0 * r, y, (1.0 + b) * w1}) <
                  1e-12);
            // Unit normal second component.
            CHECK(collar.unit_normal(y, 0.5).y == Catch::Approx(-y / r).margin(1e-13));
        }
        // Analytic normal agrees with the finite-difference cross product.
        auto P = [&](double y, double t) { return collar.point(y, t); };
        for (double t : {0.1, 0.5, 0.9}) {
            const Vec3 fd = normalized(fd_cross(P, 0.3 * r, t, 1e-6));
            const Vec3 an = collar.unit_normal(0.3 * r, t);
            CHECK(std::abs(std::abs(dot(fd, an)) - 1.0) < 1e-9);
        }
    }
}
