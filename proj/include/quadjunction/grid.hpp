// Voxelization of Omega with cone-region labels.
#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <vector>

#include "quadjunction/radial.hpp"

namespace qj {

inline constexpr std::int8_t kOutside = -1;

struct OccupancyGrid {
    double h = 0.0;                 // voxel spacing
    std::array<int, 3> dims{};      // voxels per axis
    std::vector<std::int8_t> label; // kOutside or region index 0..3
    std::size_t inside_count = 0;

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * dims[1] + j) * dims[0] + i;
    }
    Vec3 center(int i, int j, int k) const {
        const double off0 = 0.5 * (dims[0] - 1), off1 = 0.5 * (dims[1] - 1),
                     off2 = 0.5 * (dims[2] - 1);
        return {(i - off0) * h, (j - off1) * h, (k - off2) * h};
    }
    bool inside(int i, int j, int k) const {
        return i >= 0 && i < dims[0] && j >= 0 && j < dims[1] && k >= 0 && k < dims[2] &&
               label[index(i, j, k)] != kOutside;
    }
    double voxel_volume() const { return h * h * h; }
};

// Label every voxel center against the radial graph; (dims) voxels per axis,
// box sized to contain the ball of radius 1 + lambda with margin.
inline OccupancyGrid voxelize(const AssembledSurface& surf, const RadialField& field, int dims) {
    if (dims < 32) throw ResolutionTooCoarse("grid needs at least 32 voxels per axis");
    OccupancyGrid grid;
    grid.dims = {dims, dims, dims};
    const double extent = 1.0 + surf.spec.lambda;
    grid.h = 2.0 * extent / (dims - 4);  // two voxels of padding per side
    if (grid.h > 0.25 * surf.spec.r_star) {
        std::ostringstream os;
        os << "voxel size " << grid.h << " exceeds r_star/4 = " << 0.25 * surf.spec.r_star
           << "; troughs would be unresolvable";
        throw ResolutionTooCoarse(os.str());
    }
    grid.label.assign(static_cast<std::size_t>(dims) * dims * dims, kOutside);

    const double cap2 = extent * extent;
    for (int k = 0; k < dims; ++k) {
        for (int j = 0; j < dims; ++j) {
            for (int i = 0; i < dims; ++i) {
                const Vec3 x = grid.center(i, j, k);
                const double r2 = norm2(x);
                if (r2 > cap2) continue;
                const double rr = std::sqrt(r2);
                if (rr > 1e-12 && rr >= field.rho(x)) continue;
                grid.label[grid.index(i, j, k)] =
                    static_cast<std::int8_t>(surf.spec.cone.region_of(x));
                ++grid.inside_count;
            }
        }
    }
    return grid;
}

}  // namespace qj
