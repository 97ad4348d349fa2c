// Surface-tension weights for the four phases and the derived pairwise
// interface weights c_ij = c_i + c_j.
#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "quadjunction/errors.hpp"
#include "quadjunction/geometry.hpp"

namespace qj {

struct WeightSet {
    std::array<double, 4> c{};  // per-phase weights c_1..c_4 (1-based in the math)

    double cij(int i, int j) const { return i == j ? 0.0 : c[i] + c[j]; }
    double cmin() const { return std::min(std::min(c[0], c[1]), std::min(c[2], c[3])); }
    double cmax() const { return std::max(std::max(c[0], c[1]), std::max(c[2], c[3])); }

    // min over ordered pairs i != j of (2 c_i - c_j); positive iff the
    // closeness condition c_i > c_j / 2 holds.
    double closeness_margin() const {
        double m = 2.0 * c[0] - c[1];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) m = std::min(m, 2.0 * c[i] - c[j]);
        return m;
    }
};

inline WeightSet build_weights(double c1, double c2, double c3, double c4) {
    const std::array<double, 4> c{c1, c2, c3, c4};
    for (int i = 0; i < 4; ++i) {
        if (!(std::isfinite(c[i]) && c[i] > 0.0)) {
            std::ostringstream os;
            os << "phase weight c" << (i + 1) << " = " << c[i] << " must be finite and positive";
            throw ClosenessViolation(os.str());
        }
    }
    WeightSet w{c};
    if (!(w.closeness_margin() > 0.0)) {
        std::ostringstream os;
        os << "closeness condition c_i > c_j/2 violated (margin " << w.closeness_margin()
           << "); the infiltration constants would be nonpositive";
        throw ClosenessViolation(os.str());
    }
    return w;
}

// The 3x3 matrix whose positive definiteness is equivalent to the existence
// of a tetrahedron with edge lengths c_ij. Entries are quadratic forms of the
// pairwise weights: M(a,b) = c_{1,a+1}^2 + c_{1,b+1}^2 - c_{a+1,b+1}^2 for
// a != b and 2 c_{1,a+1}^2 on the diagonal.
struct GramMatrix {
    Mat3 m;
    std::array<double, 3> minors{};  // leading principal minors
    bool positive_definite = false;
};

// Raw-table variant; cij need not decompose as c_i + c_j (used when the
// pairwise weights come straight from a metric).
inline GramMatrix gram_matrix_raw(const std::array<std::array<double, 4>, 4>& cij) {
    GramMatrix g;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const double cia = cij[0][a + 1];
            const double cib = cij[0][b + 1];
            const double cab = cij[a + 1][b + 1];
            g.m(a, b) = a == b ? 2.0 * cia * cia : cia * cia + cib * cib - cab * cab;
        }
    }
    g.minors[0] = g.m(0, 0);
    g.minors[1] = g.m(0, 0) * g.m(1, 1) - g.m(0, 1) * g.m(1, 0);
    g.minors[2] = det(g.m);
    g.positive_definite = g.minors[0] > 0.0 && g.minors[1] > 0.0 && g.minors[2] > 0.0;
    return g;
}

inline GramMatrix gram_matrix(const WeightSet& w) {
    std::array<std::array<double, 4>, 4> cij{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) cij[i][j] = w.cij(i, j);
    return gram_matrix_raw(cij);
}

inline GramMatrix gram_matrix_checked(const WeightSet& w) {
    GramMatrix g = gram_matrix(w);
    if (!g.positive_definite) {
        std::ostringstream os;
        os << "edge-length matrix is not positive definite (minors " << g.minors[0] << ", "
           << g.minors[1] << ", " << g.minors[2] << "); no tetrahedron realizes these c_ij";
        throw NotPositiveDefinite(os.str());
    }
    return g;
}

}  // namespace qj
