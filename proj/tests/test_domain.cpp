#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quadjunction/domain.hpp"
#include "quadjunction/grid.hpp"
#include "quadjunction/radial.hpp"

using namespace qj;

namespace {

DomainSpec default_spec() {
    const TetrahedralCone cone = embed_cone(build_weights(1, 1, 1, 1));
    return make_domain_spec(cone, 0.15, 0.15, 0.075);
}

Mat3 rotation_about(const Vec3& axis, double angle) {
    const Vec3 u = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 R;
    R(0, 0) = c + u.x * u.x * (1 - c);
    R(0, 1) = u.x * u.y * (1 - c) - u.z * s;
    R(0, 2) = u.x * u.z * (1 - c) + u.y * s;
    R(1, 0) = u.y * u.x * (1 - c) + u.z * s;
    R(1, 1) = c + u.y * u.y * (1 - c);
    R(1, 2) = u.y * u.z * (1 - c) - u.x * s;
    R(2, 0) = u.z * u.x * (1 - c) - u.y * s;
    R(2, 1) = u.z * u.y * (1 - c) + u.x * s;
    R(2, 2) = c + u.z * u.z * (1 - c);
    return R;
}

}  // namespace

TEST_CASE("domain spec validation") {
    const TetrahedralCone cone = embed_cone(build_weights(1, 1, 1, 1));
    CHECK_THROWS_AS(make_domain_spec(cone, 0.25, 0.1, 0.05), DomainError);   // r_star too big
    CHECK_THROWS_AS(make_domain_spec(cone, 0.15, 0.1, 0.09), DomainError);   // eta > r_star/2
    CHECK_THROWS_AS(make_domain_spec(cone, 0.15, -0.1, 0.05), DomainError);  // lambda <= 0
    CHECK_NOTHROW(make_domain_spec(cone, 0.15, 0.15, 0.075));
}

TEST_CASE("assembled surface is C1 across all seams") {
    const AssembledSurface surf = assemble_surface(default_spec(), 400);
    REQUIRE(surf.patches.size() == 6 + 12 + 4);
    REQUIRE(surf.seams.size() == 24);
    for (const auto& seam : surf.seams) {
        INFO(seam.seam);
        CHECK(seam.max_position_gap < 1e-12);
        CHECK(seam.max_normal_angle < 1e-6);
        CHECK(seam.max_normal_angle < 1e-9);  // the construction is exact, not just C1-close
    }
}

TEST_CASE("troughs ride the sphere and bulge outward; valleys dip inward") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const double r = surf.spec.r_star;
    for (const auto& patch : surf.patches) {
        for (int a = 0; a <= 16; ++a) {
            for (int b = 0; b <= 16; ++b) {
                const double s = a / 16.0, t = b / 16.0;
                const double rad = norm(patch->point(s, t));
                if (patch->kind == PatchKind::trough) {
                    CHECK(rad >= 1.0 - 1e-12);
                    CHECK(rad <= 1.0 + r);
                } else if (patch->kind == PatchKind::valley) {
                    CHECK(rad <= 1.0 - 1e-6);
                    CHECK(rad >= 1.0 - 3.0 * r - 1e-12);
                } else {
                    CHECK(rad <= 1.0 + r);
                    CHECK(rad >= 1.0 - 3.0 * r);
                }
            }
        }
        if (patch->kind == PatchKind::trough) {
            // The arc itself is the lowest line of the trough.
            for (int a = 0; a <= 16; ++a)
                CHECK(norm(patch->point(a / 16.0, 0.5)) == Catch::Approx(1.0).margin(1e-13));
        }
    }
}

TEST_CASE("goodnormals holds with margins linear in the offset") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const auto reports = goodnormals_check(surf, 48, 24);
    for (const auto& pr : kPairs) {
        const auto& rep = reports[pr[0]][pr[1]];
        INFO("pair " << pr[0] + 1 << pr[1] + 1);
        CHECK(rep.pass);
        CHECK(rep.min_margin > 0.0);
        CHECK(rep.max_on_curve < 1e-10);
        // nu^(2) = -y/r_* makes the margin slope 1/r_* up to frame effects.
        CHECK(rep.min_margin_slope > 0.5 / surf.spec.r_star);
        CHECK(rep.samples > 1000);
    }
}

TEST_CASE("symmetric cone: troughs at a junction are 2pi/3 rotations of each other") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const TetrahedralCone& cone = surf.spec.cone;
    const Vec3 u = cone.junction_ray(0, 1, 2);
    const Mat3 R = rotation_about(u, 2.0 * kPi / 3.0);

    // Collect the three collars attached to junction {1,2,3}.
    std::vector<const CollarPatch*> collars;
    for (const auto& p : surf.patches) {
        if (p->kind != PatchKind::interpolation) continue;
        const auto* c = static_cast<const CollarPatch*>(p.get());
        if (c->arc().junction[c->end()] == triple_index_for(0, 1, 2)) collars.push_back(c);
    }
    REQUIRE(collars.size() == 3);

    // Rotating one collar's point set by 2pi/3 about the junction ray lands on
    // one of the other two.
    std::vector<Vec3> rotated;
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) rotated.push_back(R * collars[0]->point(a / 12.0, b / 12.0));
    double best = 1e300;
    for (int other : {1, 2}) {
        double worst = 0.0;
        for (const Vec3& q : rotated) {
            double nearest = 1e300;
            for (int a = 0; a <= 24; ++a)
                for (int b = 0; b <= 24; ++b)
                    nearest = std::min(nearest, norm(q - collars[other]->point(a / 24.0, b / 24.0)));
            worst = std::max(worst, nearest);
        }
        best = std::min(best, worst);
    }
    CHECK(best < 5e-3);  // sampled Hausdorff gap at 25x25 resolution
}

TEST_CASE("non-symmetric cone: trough directions reproduce the plane angles") {
    const TetrahedralCone cone = embed_cone(build_weights(0.8, 0.95, 1.05, 1.2));
    const double r = 0.12;
    for (const auto& tr : kTriples) {
        const int i = tr[0], j = tr[1], k = tr[2];
        const ArcGeometry aij = make_arc_geometry(cone, std::min(i, j), std::max(i, j), r);
        const ArcGeometry aik = make_arc_geometry(cone, std::min(i, k), std::max(i, k), r);
        // End frames at this junction.
        const int tri = triple_index_for(i, j, k);
        const Vec3 dij = aij.frame[aij.junction[0] == tri ? 0 : 1].a;
        const Vec3 dik = aik.frame[aik.junction[0] == tri ? 0 : 1].a;
        // Interior angle of region S_i at the ray equals pi minus the angle
        // between the plane normals.
        const double lhs = dot(dij, dik);
        const double rhs = -dot(cone.normal(i, j), cone.normal(i, k));
        CHECK(lhs == Catch::Approx(rhs).margin(1e-12));
    }
    CHECK_NOTHROW(assemble_surface(make_domain_spec(cone, r, r, r / 2)));
}

TEST_CASE("footprint overlap is detected") {
    // A handcrafted degenerate cone: squeeze two vertices together so the
    // wedge between troughs at a junction collapses.
    TetrahedralCone cone = embed_cone(build_weights(1, 1, 1, 1));
    cone.vertex[1] = cone.vertex[0] + 0.05 * (cone.vertex[1] - cone.vertex[0]);
    CHECK_THROWS_AS(assemble_surface(DomainSpec{cone, 0.15, 0.15, 0.075}), PatchOverlap);
}

TEST_CASE("radial graph matches the exact patches inside footprints") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const RadialField field(surf);

    double worst = 0.0;
    int checked = 0;
    for (const auto& patch : surf.patches) {
        for (int a = 1; a < 14; ++a) {
            for (int b = 1; b < 14; ++b) {
                const Vec3 p = patch->point(a / 14.0, b / 14.0);
                const double rr = field.rho(p);
                // Skip the slight overhang band near the valley rims where the
                // graph legitimately reports the outer sheet.
                if (patch->kind == PatchKind::interpolation && b <= 3) continue;
                worst = std::max(worst, std::abs(rr - norm(p)));
                ++checked;
            }
        }
    }
    CHECK(checked > 2000);
    CHECK(worst < 5e-3);

    // Troughs and valleys are radial graphs; there the match is exact.
    for (const auto& patch : surf.patches) {
        if (patch->kind == PatchKind::interpolation) continue;
        for (int a = 1; a < 10; ++a)
            for (int b = 1; b < 10; ++b) {
                const Vec3 p = patch->point(a / 10.0, b / 10.0);
                CHECK(std::abs(field.rho(p) - norm(p)) < 1e-9);
            }
    }
}

TEST_CASE("voxelize: bounds, tie-break, resolution guard") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const RadialField field(surf);
    CHECK_THROWS_AS(voxelize(surf, field, 48), ResolutionTooCoarse);

    const OccupancyGrid grid = voxelize(surf, field, 67);
    CHECK(grid.inside_count > 0);
    // The exact-origin voxel exists for odd dims and takes the tie-break label.
    CHECK(grid.label[grid.index(33, 33, 33)] == 0);
    // Outside the outer sphere everything is OUTSIDE.
    int outside_violations = 0;
    for (int k = 0; k < 67; ++k)
        for (int j = 0; j < 67; ++j)
            for (int i = 0; i < 67; ++i)
                if (norm(grid.center(i, j, k)) > 1.0 + surf.spec.lambda + grid.h &&
                    grid.label[grid.index(i, j, k)] != kOutside)
                    ++outside_violations;
    CHECK(outside_violations == 0);
}

TEST_CASE("voxel volume against Monte Carlo") {
    const AssembledSurface surf = assemble_surface(default_spec());
    const RadialField field(surf);
    const OccupancyGrid grid = voxelize(surf, field, 68);
    const double vox_volume = grid.inside_count * grid.voxel_volume();

    std::mt19937 rng(2024);
    const double extent = 1.0 + surf.spec.lambda;
    std::uniform_real_distribution<double> d(-extent, extent);
    const int n = 2'000'000;
    std::size_t hits = 0;
    for (int s = 0; s < n; ++s) {
        const Vec3 x{d(rng), d(rng), d(rng)};
        const double rr = norm(x);
        if (rr < 1e-9 || rr < field.rho(x)) ++hits;
    }
    const double mc_volume = std::pow(2.0 * extent, 3) * hits / n;
    CHECK(std::abs(vox_volume - mc_volume) / mc_volume < 0.05);
}
