#pragma once

#include <vector>

#include "bksim/grid.hpp"

namespace bksim {

/// Precomputed half-sample cosine basis (DCT-II modes) of the Neumann
/// Laplacian on a grid.
///
/// Mode (k,l) samples cos(pi k (i+1/2)/nx) cos(pi l (j+1/2)/ny) and satisfies
/// laplacian_neumann(mode) = -eigenvalue(k,l) * mode.
class CosinePlan {
public:
    explicit CosinePlan(const Grid& g);

    const Grid& grid() const { return grid_; }

    double eigenvalue(int k, int l) const { return lambda_x_[k] + lambda_y_[l]; }

    /// Unnormalised forward transform: X_kl = sum_ij x_ij cos_k(i) cos_l(j).
    void forward(const ScalarField& in, std::vector<double>& out) const;
    /// Inverse of forward().
    void inverse(const std::vector<double>& in, ScalarField& out) const;

private:
    Grid grid_;
    std::vector<double> lambda_x_;
    std::vector<double> lambda_y_;
    std::vector<double> cos_x_;  // nx x nx, row k
    std::vector<double> cos_y_;  // ny x ny, row l
};

/// Sampled cosine mode (k,l) on the plan's grid.
ScalarField cosine_mode(const Grid& g, int k, int l);

struct PoissonSolution {
    ScalarField phi;
    double removed_mean = 0.0;  ///< mean of rhs subtracted before solving
};

/// Zero-mean phi with laplacian_neumann(phi) = rhs - mean(rhs).
PoissonSolution solve_poisson_neumann(const ScalarField& rhs, const CosinePlan& plan);

/// (I - sigma * laplacian_neumann) result = rhs, sigma >= 0.
ScalarField solve_helmholtz_neumann(const ScalarField& rhs, double sigma, const CosinePlan& plan);

struct CgOptions {
    double tol = 1e-10;
    int max_iter = 0;  ///< 0 selects 10 * nx * ny
    bool jacobi = false;
};

struct CgResult {
    FaceVectorField solution;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Conjugate gradients for [(1 + dt*drag) I - sigma L_D] U = rhs on interior
/// faces, where L_D is laplacian_dirichlet_velocity and sigma = dt * mu_e.
/// Throws Error(NoConvergence) when the relative residual stays above tol.
CgResult solve_momentum_helmholtz(const FaceVectorField& rhs, const FaceVectorField& drag,
                                  double dt, double sigma, const CgOptions& opts = {});

/// Applies the momentum operator above; shared by the solver and its tests.
FaceVectorField apply_momentum_operator(const FaceVectorField& w, const FaceVectorField& drag,
                                        double dt, double sigma);

}  // namespace bksim
