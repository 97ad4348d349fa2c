// Zero-level-set extraction on a voxel-center scalar field using the Kuhn
// six-tetrahedra cell decomposition (table-free; same O(h) area convergence
// as cube-based extraction once the field is smoothed).
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "quadjunction/geometry.hpp"

namespace qj {

struct InterfaceMesh {
    std::vector<std::array<Vec3, 3>> tris;
    std::vector<Vec3> normals;  // unit, oriented toward decreasing field
    double area = 0.0;
};

namespace detail {

inline constexpr std::array<std::array<int, 3>, 8> kCorner{{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
}};

// Kuhn subdivision: six tetrahedra around the 0-7 diagonal.
inline constexpr std::array<std::array<int, 4>, 6> kTets{{
    {0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7},
}};

inline Vec3 edge_zero(const Vec3& pa, const Vec3& pb, double fa, double fb) {
    const double t = fa / (fa - fb);
    return pa + t * (pb - pa);
}

inline void emit(InterfaceMesh& mesh, const Vec3& a, const Vec3& b, const Vec3& c,
                 const Vec3& grad) {
    Vec3 n = cross(b - a, c - a);
    const double len = norm(n);
    if (!(len > 1e-30)) return;
    n = n / len;
    if (dot(n, grad) > 0.0) n = -n;  // toward decreasing field
    mesh.tris.push_back({a, b, c});
    mesh.normals.push_back(n);
    mesh.area += 0.5 * len;
}

inline void march_tet(InterfaceMesh& mesh, const std::array<Vec3, 4>& p,
                      const std::array<double, 4>& f) {
    std::array<int, 4> pos{}, neg{};
    int npos = 0, nneg = 0;
    for (int v = 0; v < 4; ++v) {
        if (f[v] >= 0.0)
            pos[npos++] = v;
        else
            neg[nneg++] = v;
    }
    if (npos == 0 || nneg == 0) return;

    // Constant gradient of the linear interpolant on the tetrahedron.
    Mat3 E;
    for (int r = 0; r < 3; ++r) {
        const Vec3 d = p[r + 1] - p[0];
        E(r, 0) = d.x;
        E(r, 1) = d.y;
        E(r, 2) = d.z;
    }
    const Vec3 grad = solve3(E, Vec3{f[1] - f[0], f[2] - f[0], f[3] - f[0]});

    if (npos == 1 || nneg == 1) {
        const int lone = npos == 1 ? pos[0] : neg[0];
        const auto& rest = npos == 1 ? neg : pos;
        const Vec3 q0 = edge_zero(p[lone], p[rest[0]], f[lone], f[rest[0]]);
        const Vec3 q1 = edge_zero(p[lone], p[rest[1]], f[lone], f[rest[1]]);
        const Vec3 q2 = edge_zero(p[lone], p[rest[2]], f[lone], f[rest[2]]);
        emit(mesh, q0, q1, q2, grad);
    } else {
        // Two on each side: the cut is a quad over the four mixed edges.
        const int a0 = pos[0], a1 = pos[1], b0 = neg[0], b1 = neg[1];
        const Vec3 q00 = edge_zero(p[a0], p[b0], f[a0], f[b0]);
        const Vec3 q01 = edge_zero(p[a0], p[b1], f[a0], f[b1]);
        const Vec3 q10 = edge_zero(p[a1], p[b0], f[a1], f[b0]);
        const Vec3 q11 = edge_zero(p[a1], p[b1], f[a1], f[b1]);
        emit(mesh, q00, q01, q11, grad);
        emit(mesh, q00, q11, q10, grad);
    }
}

}  // namespace detail

// March the cells of a voxel-center lattice. `value(i,j,k)` returns the field
// or NaN where undefined; `active(i,j,k)` gates cells (all eight corners must
// be defined and at least one call must return true).
inline InterfaceMesh march_cells(
    const std::array<int, 3>& dims, const std::function<Vec3(int, int, int)>& position,
    const std::function<double(int, int, int)>& value,
    const std::function<bool(int, int, int)>& cell_active) {
    InterfaceMesh mesh;
    std::array<Vec3, 8> P;
    std::array<double, 8> F;
    for (int k = 0; k + 1 < dims[2]; ++k) {
        for (int j = 0; j + 1 < dims[1]; ++j) {
            for (int i = 0; i + 1 < dims[0]; ++i) {
                if (!cell_active(i, j, k)) continue;
                bool defined = true;
                for (int c = 0; c < 8 && defined; ++c) {
                    const auto& o = detail::kCorner[c];
                    F[c] = value(i + o[0], j + o[1], k + o[2]);
                    P[c] = position(i + o[0], j + o[1], k + o[2]);
                    defined = std::isfinite(F[c]);
                }
                if (!defined) continue;
                bool haspos = false, hasneg = false;
                for (int c = 0; c < 8; ++c) (F[c] >= 0.0 ? haspos : hasneg) = true;
                if (!haspos || !hasneg) continue;
                for (const auto& tet : detail::kTets) {
                    detail::march_tet(mesh, {P[tet[0]], P[tet[1]], P[tet[2]], P[tet[3]]},
                                      {F[tet[0]], F[tet[1]], F[tet[2]], F[tet[3]]});
                }
            }
        }
    }
    return mesh;
}

}  // namespace qj
