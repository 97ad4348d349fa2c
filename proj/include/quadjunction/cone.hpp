// The tetrahedral cone: four circumcentered vertices A_i with |A_j - A_i| =
// c_ij, constant interface normals n_ij = (A_j - A_i)/c_ij, and the four
// triple-junction rays. The six planes through the origin normal to the n_ij
// partition space into four conical regions.
#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

#include "quadjunction/errors.hpp"
#include "quadjunction/geometry.hpp"
#include "quadjunction/weights.hpp"

namespace qj {

struct TetrahedralCone {
    WeightSet weights;
    std::array<Vec3, 4> vertex{};   // A_1..A_4, circumcenter at the origin
    double circumradius = 0.0;

    Vec3 normal(int i, int j) const {  // n_ij, unit, points from region i to region j
        return (vertex[j] - vertex[i]) / weights.cij(i, j);
    }

    // Unit direction of the ray where regions i, j, k meet.
    Vec3 junction_ray(int i, int j, int k) const {
        const int l = 6 - i - j - k;
        Vec3 v = cross(vertex[j] - vertex[i], vertex[k] - vertex[i]);
        v = v / norm(v);
        // A_i . v = A_j . v = A_k . v by construction; pick the sign that puts
        // the complementary vertex strictly below.
        if (dot(vertex[i], v) < dot(vertex[l], v)) v = -v;
        return v;
    }

    // Region membership: argmax_i A_i . x, lowest index on ties.
    int region_of(const Vec3& x) const {
        int best = 0;
        double bestdot = dot(vertex[0], x);
        for (int i = 1; i < 4; ++i) {
            const double d = dot(vertex[i], x);
            if (d > bestdot) {
                best = i;
                bestdot = d;
            }
        }
        return best;
    }

    // Residual of the stationarity balance law over one triple.
    Vec3 balance_residual(int i, int j, int k) const {
        return weights.cij(i, j) * normal(i, j) + weights.cij(j, k) * normal(j, k) +
               weights.cij(k, i) * normal(k, i);
    }
};

// Realize the tetrahedron from the edge lengths. The matrix of
// gram_matrix() equals twice the Gram matrix of the edge vectors
// v_a = A_{a+1} - A_1, so the rows of the Cholesky factor of M/2 give the
// edge vectors directly; the circumcenter then solves the equidistance
// system 2 v_a . x = |v_a|^2 and every vertex is translated by -x.
inline TetrahedralCone embed_cone(const WeightSet& w) {
    const GramMatrix g = gram_matrix_checked(w);

    Mat3 half;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) half(r, c) = 0.5 * g.m(r, c);
    Mat3 L;
    if (!cholesky3(half, L)) {
        throw NotPositiveDefinite("Cholesky factorization failed for the edge Gram matrix");
    }

    TetrahedralCone cone;
    cone.weights = w;
    cone.vertex[0] = {0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) cone.vertex[a + 1] = {L(a, 0), L(a, 1), L(a, 2)};

    Mat3 A;  // rows 2 v_a
    Vec3 rhs;
    for (int a = 0; a < 3; ++a) {
        const Vec3 v = cone.vertex[a + 1];
        A(a, 0) = 2.0 * v.x;
        A(a, 1) = 2.0 * v.y;
        A(a, 2) = 2.0 * v.z;
        rhs[a] = norm2(v);
    }
    const Vec3 center = solve3(A, rhs);
    for (auto& p : cone.vertex) p -= center;
    cone.circumradius = norm(cone.vertex[0]);
    return cone;
}

// All four unordered triples {i,j,k} of {0,1,2,3}, listed with their
// complementary index last.
inline constexpr std::array<std::array<int, 4>, 4> kTriples{{
    {0, 1, 2, 3},
    {0, 1, 3, 2},
    {0, 2, 3, 1},
    {1, 2, 3, 0},
}};

// The six unordered pairs i<j.
inline constexpr std::array<std::array<int, 2>, 6> kPairs{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};

}  // namespace qj
