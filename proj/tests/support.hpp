// Shared test helpers: deterministic random fields and dense-matrix oracles
// assembled directly from the stencil definitions, independent of the
// library's loop structure.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bksim/grid.hpp"
#include "bksim/operators.hpp"

namespace testing {

using bksim::FaceVectorField;
using bksim::Grid;
using bksim::ScalarField;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline ScalarField random_scalar(const Grid& g, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField c(g);
    for (double& x : c.values()) x = dist(rng);
    return c;
}

/// Random interior-face values, zero on the walls.
inline FaceVectorField random_faces(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FaceVectorField w(g);
    for (double& x : w.u_values()) x = dist(rng);
    for (double& x : w.v_values()) x = dist(rng);
    w.enforce_no_penetration();
    return w;
}

// Vector layouts: cells i*ny+j; faces [u block (nx+1)*ny | v block nx*(ny+1)].
inline int cell(const Grid& g, int i, int j) { return i * g.ny + j; }
inline int xface(const Grid& g, int i, int j) { return i * g.ny + j; }
inline int yface(const Grid& g, int i, int j) { return static_cast<int>(g.xfaces()) + i * (g.ny + 1) + j; }
inline int ncells(const Grid& g) { return static_cast<int>(g.cells()); }
inline int nfaces(const Grid& g) { return static_cast<int>(g.xfaces() + g.yfaces()); }

inline bool interior_xface(const Grid& g, int i) { return i > 0 && i < g.nx; }
inline bool interior_yface(const Grid& g, int j) { return j > 0 && j < g.ny; }

inline VectorXd vec(const ScalarField& c) {
    VectorXd out(c.size());
    std::copy(c.values().begin(), c.values().end(), out.data());
    return out;
}

inline VectorXd vec(const FaceVectorField& w) {
    const Grid& g = w.grid();
    VectorXd out(nfaces(g));
    std::copy(w.u_values().begin(), w.u_values().end(), out.data());
    std::copy(w.v_values().begin(), w.v_values().end(), out.data() + g.xfaces());
    return out;
}

inline ScalarField scalar_of(const Grid& g, const VectorXd& x) {
    ScalarField c(g);
    std::copy(x.data(), x.data() + x.size(), c.values().begin());
    return c;
}

inline FaceVectorField faces_of(const Grid& g, const VectorXd& x) {
    FaceVectorField w(g);
    std::copy(x.data(), x.data() + g.xfaces(), w.u_values().begin());
    std::copy(x.data() + g.xfaces(), x.data() + x.size(), w.v_values().begin());
    return w;
}

/// Diagonal projector onto interior faces.
inline MatrixXd interior_face_mask(const Grid& g) {
    MatrixXd p = MatrixXd::Zero(nfaces(g), nfaces(g));
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) p(xface(g, i, j), xface(g, i, j)) = 1.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) p(yface(g, i, j), yface(g, i, j)) = 1.0;
    return p;
}

/// Face-normal difference quotient; wall rows empty.
inline MatrixXd gradient_matrix(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(nfaces(g), ncells(g));
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            m(xface(g, i, j), cell(g, i, j)) += 1.0 / g.hx;
            m(xface(g, i, j), cell(g, i - 1, j)) -= 1.0 / g.hx;
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            m(yface(g, i, j), cell(g, i, j)) += 1.0 / g.hy;
            m(yface(g, i, j), cell(g, i, j - 1)) -= 1.0 / g.hy;
        }
    return m;
}

/// Net outflow per cell over all four faces, walls included.
inline MatrixXd divergence_matrix(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(ncells(g), nfaces(g));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const int r = cell(g, i, j);
            m(r, xface(g, i + 1, j)) += 1.0 / g.hx;
            m(r, xface(g, i, j)) -= 1.0 / g.hx;
            m(r, yface(g, i, j + 1)) += 1.0 / g.hy;
            m(r, yface(g, i, j)) -= 1.0 / g.hy;
        }
    return m;
}

/// Zero-flux 5-point Laplacian: every in-domain neighbour couples, missing
/// neighbours drop out.
inline MatrixXd neumann_laplacian_matrix(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(ncells(g), ncells(g));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const int r = cell(g, i, j);
            auto link = [&](int ii, int jj, double w) {
                if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) return;
                m(r, cell(g, ii, jj)) += w;
                m(r, r) -= w;
            };
            link(i - 1, j, 1.0 / (g.hx * g.hx));
            link(i + 1, j, 1.0 / (g.hx * g.hx));
            link(i, j - 1, 1.0 / (g.hy * g.hy));
            link(i, j + 1, 1.0 / (g.hy * g.hy));
        }
    return m;
}

/// No-slip velocity Laplacian on interior faces. Normal-direction neighbours
/// on the wall contribute nothing (structural zero); a tangential neighbour
/// beyond the wall is the reflected value -self.
inline MatrixXd dirichlet_laplacian_matrix(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(nfaces(g), nfaces(g));
    const double ax = 1.0 / (g.hx * g.hx), ay = 1.0 / (g.hy * g.hy);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const int r = xface(g, i, j);
            m(r, r) -= 2.0 * ax + 2.0 * ay;
            for (int ii : {i - 1, i + 1})
                if (interior_xface(g, ii)) m(r, xface(g, ii, j)) += ax;
            for (int jj : {j - 1, j + 1}) {
                if (jj >= 0 && jj < g.ny) m(r, xface(g, i, jj)) += ay;
                else m(r, r) -= ay;
            }
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            const int r = yface(g, i, j);
            m(r, r) -= 2.0 * ax + 2.0 * ay;
            for (int jj : {j - 1, j + 1})
                if (interior_yface(g, jj)) m(r, yface(g, i, jj)) += ay;
            for (int ii : {i - 1, i + 1}) {
                if (ii >= 0 && ii < g.nx) m(r, yface(g, ii, j)) += ax;
                else m(r, r) -= ax;
            }
        }
    return m;
}

/// Arithmetic mean of the two cells adjacent to each interior face.
inline MatrixXd cell_to_face_average(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(nfaces(g), ncells(g));
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            m(xface(g, i, j), cell(g, i, j)) = 0.5;
            m(xface(g, i, j), cell(g, i - 1, j)) = 0.5;
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            m(yface(g, i, j), cell(g, i, j)) = 0.5;
            m(yface(g, i, j), cell(g, i, j - 1)) = 0.5;
        }
    return m;
}

/// Half the sum over the two x-faces plus half the sum over the two y-faces
/// of a cell (applied to squared face gradients).
inline MatrixXd face_to_cell_half_sums(const Grid& g) {
    MatrixXd m = MatrixXd::Zero(ncells(g), nfaces(g));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const int r = cell(g, i, j);
            m(r, xface(g, i, j)) = 0.5;
            m(r, xface(g, i + 1, j)) = 0.5;
            m(r, yface(g, i, j)) = 0.5;
            m(r, yface(g, i, j + 1)) = 0.5;
        }
    return m;
}

/// Skew advection matrix for a fixed face velocity, assembled face by face:
/// each interior face couples its two cells with +-U/(2h) and nothing else.
inline MatrixXd advection_matrix(const FaceVectorField& w) {
    const Grid& g = w.grid();
    MatrixXd m = MatrixXd::Zero(ncells(g), ncells(g));
    auto couple = [&](int lo, int hi, double un, double h) {
        // Flux half: +-un/(4h) on the mean; convective half: un/(4h) on the jump.
        m(hi, lo) += -un / (4.0 * h) - un / (4.0 * h);
        m(hi, hi) += -un / (4.0 * h) + un / (4.0 * h);
        m(lo, lo) += un / (4.0 * h) - un / (4.0 * h);
        m(lo, hi) += un / (4.0 * h) + un / (4.0 * h);
    };
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) couple(cell(g, i - 1, j), cell(g, i, j), w.u(i, j), g.hx);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) couple(cell(g, i, j - 1), cell(g, i, j), w.v(i, j), g.hy);
    return m;
}

/// Apply a library operator to unit vectors to recover its matrix.
template <class Op>
MatrixXd matrix_of_cell_op(const Grid& g, int rows, Op op) {
    MatrixXd m(rows, ncells(g));
    for (int k = 0; k < ncells(g); ++k) {
        ScalarField e(g);
        e.values()[k] = 1.0;
        m.col(k) = op(e);
    }
    return m;
}

template <class Op>
MatrixXd matrix_of_face_op(const Grid& g, int rows, Op op) {
    MatrixXd m(rows, nfaces(g));
    for (int k = 0; k < nfaces(g); ++k) {
        VectorXd e = VectorXd::Zero(nfaces(g));
        e(k) = 1.0;
        m.col(k) = op(faces_of(g, e));
    }
    return m;
}

inline std::vector<int> interior_face_indices(const Grid& g) {
    std::vector<int> idx;
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) idx.push_back(xface(g, i, j));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) idx.push_back(yface(g, i, j));
    return idx;
}

inline MatrixXd restrict_to(const MatrixXd& m, const std::vector<int>& idx) {
    MatrixXd out(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = m(idx[r], idx[c]);
    return out;
}

inline double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing
