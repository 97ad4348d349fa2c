// Sharp-interface measurements on labeled voxel partitions: pairwise
// interface areas from smoothed indicator differences, the weighted perimeter
// in both its pairwise and per-region forms, and boundary-trace estimates.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "quadjunction/grid.hpp"
#include "quadjunction/marching.hpp"
#include "quadjunction/weights.hpp"

namespace qj {

struct LabeledPartition {
    const OccupancyGrid* grid = nullptr;
    std::vector<std::int8_t> labels;  // kOutside where outside

    static LabeledPartition from_grid(const OccupancyGrid& g) {
        return LabeledPartition{&g, g.labels_copy()};
    }
    std::int8_t at(int i, int j, int k) const { return labels[grid->index(i, j, k)]; }
};

struct InterfaceMeasure {
    std::array<std::array<double, 4>, 4> areas{};   // H^2(bd R_i cap bd R_j cap Omega)
    std::array<double, 4> region_boundary{};        // H^2(bd* R_i cap Omega)
    std::array<double, 4> boundary_traces{};        // face-count area of bd R_i cap bd Omega
};

namespace detail {

// Signed indicator field for one pairwise interface, mirror-extended one
// voxel past the boundary, with one Jacobi smoothing pass.
class IndicatorField {
public:
    template <typename Predicate>
    IndicatorField(const LabeledPartition& part, Predicate plus, Predicate minus, bool smooth) {
        const OccupancyGrid& g = *part.grid;
        dims_ = g.dims;
        f_.assign(g.label.size(), std::numeric_limits<double>::quiet_NaN());
        auto& labels = part.labels;
        for (std::size_t n = 0; n < labels.size(); ++n) {
            if (labels[n] == kOutside) continue;
            f_[n] = plus(labels[n]) ? 1.0 : (minus(labels[n]) ? -1.0 : 0.0);
        }
        mirror_fill(g);
        if (smooth) jacobi_pass(g);
    }

    double operator()(int i, int j, int k) const {
        return f_[(static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i];
    }

private:
    void mirror_fill(const OccupancyGrid& g) {
        std::vector<double> out(f_);
        for (int k = 0; k < dims_[2]; ++k)
            for (int j = 0; j < dims_[1]; ++j)
                for (int i = 0; i < dims_[0]; ++i) {
                    const std::size_t n = g.index(i, j, k);
                    if (std::isfinite(f_[n])) continue;
                    double sum = 0.0;
                    int cnt = 0;
                    auto take = [&](int ii, int jj, int kk) {
                        if (ii < 0 || jj < 0 || kk < 0 || ii >= dims_[0] || jj >= dims_[1] ||
                            kk >= dims_[2])
                            return;
                        const double v = f_[g.index(ii, jj, kk)];
                        if (std::isfinite(v)) {
                            sum += v;
                            ++cnt;
                        }
                    };
                    take(i - 1, j, k);
                    take(i + 1, j, k);
                    take(i, j - 1, k);
                    take(i, j + 1, k);
                    take(i, j, k - 1);
                    take(i, j, k + 1);
                    if (cnt > 0) out[n] = sum / cnt;
                }
        f_.swap(out);
    }

    void jacobi_pass(const OccupancyGrid& g) {
        std::vector<double> out(f_);
        for (int k = 0; k < dims_[2]; ++k)
            for (int j = 0; j < dims_[1]; ++j)
                for (int i = 0; i < dims_[0]; ++i) {
                    const std::size_t n = g.index(i, j, k);
                    if (!std::isfinite(f_[n])) continue;
                    double sum = f_[n];
                    int cnt = 1;
                    auto take = [&](int ii, int jj, int kk) {
                        if (ii < 0 || jj < 0 || kk < 0 || ii >= dims_[0] || jj >= dims_[1] ||
                            kk >= dims_[2])
                            return;
                        const double v = f_[g.index(ii, jj, kk)];
                        if (std::isfinite(v)) {
                            sum += v;
                            ++cnt;
                        }
                    };
                    take(i - 1, j, k);
                    take(i + 1, j, k);
                    take(i, j - 1, k);
                    take(i, j + 1, k);
                    take(i, j, k - 1);
                    take(i, j, k + 1);
                    out[n] = sum / cnt;
                }
        f_.swap(out);
    }

    std::array<int, 3> dims_;
    std::vector<double> f_;
};

}  // namespace detail

// Zero level set of the smoothed chi_i - chi_j field, restricted to cells
// where both labels appear; normals point from region i to region j.
inline InterfaceMesh extract_interface(const LabeledPartition& part, int i, int j,
                                       bool smooth = true) {
    const OccupancyGrid& g = *part.grid;
    const detail::IndicatorField field(
        part, [i](std::int8_t l) { return l == i; }, [j](std::int8_t l) { return l == j; }, smooth);
    auto cell_active = [&](int ci, int cj, int ck) {
        bool has_i = false, has_j = false;
        for (const auto& o : detail::kCorner) {
            const std::int8_t l = part.at(ci + o[0], cj + o[1], ck + o[2]);
            has_i |= l == i;
            has_j |= l == j;
        }
        return has_i && has_j;
    };
    return march_cells(
        g.dims, [&](int a, int b, int c) { return g.center(a, b, c); },
        [&](int a, int b, int c) { return field(a, b, c); }, cell_active);
}

// Zero level set of chi_i - chi_{not i} within Omega (the reduced boundary of
// region i away from the domain boundary).
inline InterfaceMesh extract_region_boundary(const LabeledPartition& part, int i,
                                             bool smooth = true) {
    const OccupancyGrid& g = *part.grid;
    const detail::IndicatorField field(
        part, [i](std::int8_t l) { return l == i; },
        [i](std::int8_t l) { return l != i && l != kOutside; }, smooth);
    auto cell_active = [&](int ci, int cj, int ck) {
        bool has_i = false, has_other = false;
        for (const auto& o : detail::kCorner) {
            const std::int8_t l = part.at(ci + o[0], cj + o[1], ck + o[2]);
            has_i |= l == i;
            has_other |= l != i && l != kOutside;
        }
        return has_i && has_other;
    };
    return march_cells(
        g.dims, [&](int a, int b, int c) { return g.center(a, b, c); },
        [&](int a, int b, int c) { return field(a, b, c); }, cell_active);
}

inline InterfaceMeasure interface_areas(const LabeledPartition& part) {
    InterfaceMeasure m;
    for (const auto& p : kPairs) {
        const double a = extract_interface(part, p[0], p[1]).area;
        m.areas[p[0]][p[1]] = a;
        m.areas[p[1]][p[0]] = a;
    }
    const OccupancyGrid& g = *part.grid;
    for (int i = 0; i < 4; ++i) {
        m.region_boundary[i] = extract_region_boundary(part, i).area;
        // Staircase face count for the trace on the domain boundary.
        double faces = 0.0;
        for (int k = 0; k < g.dims[2]; ++k)
            for (int j = 0; j < g.dims[1]; ++j)
                for (int ii = 0; ii < g.dims[0]; ++ii) {
                    if (part.at(ii, j, k) != i) continue;
                    auto outside = [&](int a, int b, int c) {
                        return a < 0 || b < 0 || c < 0 || a >= g.dims[0] || b >= g.dims[1] ||
                               c >= g.dims[2] || part.at(a, b, c) == kOutside;
                    };
                    faces += outside(ii - 1, j, k) + outside(ii + 1, j, k) + outside(ii, j - 1, k) +
                             outside(ii, j + 1, k) + outside(ii, j, k - 1) + outside(ii, j, k + 1);
                }
        m.boundary_traces[i] = faces * g.h * g.h;
    }
    return m;
}

struct WeightedPerimeter {
    double pairwise = 0.0;    // sum c_ij areas_ij
    double per_region = 0.0;  // sum c_i H^2(bd* R_i cap Omega)
    double relative_gap() const {
        const double s = std::max(std::abs(pairwise), std::abs(per_region));
        return s > 0.0 ? std::abs(pairwise - per_region) / s : 0.0;
    }
};

inline WeightedPerimeter weighted_perimeter(const LabeledPartition& part, const WeightSet& w,
                                            const InterfaceMeasure& m) {
    WeightedPerimeter e;
    for (const auto& p : kPairs) e.pairwise += w.cij(p[0], p[1]) * m.areas[p[0]][p[1]];
    for (int i = 0; i < 4; ++i) e.per_region += w.c[i] * m.region_boundary[i];
    return e;
}

inline WeightedPerimeter weighted_perimeter(const LabeledPartition& part, const WeightSet& w) {
    return weighted_perimeter(part, w, interface_areas(part));
}

}  // namespace qj
