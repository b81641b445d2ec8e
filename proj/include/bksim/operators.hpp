#pragma once

#include "bksim/grid.hpp"

namespace bksim {

/// Physical coefficients of the flow/transport system.
struct Params {
    double mu = 1.0;         ///< viscosity in the drag term
    double mu_e = 1.0;       ///< effective (Brinkman) viscosity
    double d = 1.0;          ///< solute diffusivity
    double alpha = 1.0;      ///< permeability law K(C) = 1/(alpha + beta C)
    double beta = 0.0;
    double delta_hat = 0.01; ///< Korteweg gradient coefficient
    double gamma = 0.01;     ///< Korteweg Laplacian coefficient; only enters pressure recovery

    friend bool operator==(const Params&, const Params&) = default;
};

/// Throws Error(ConstraintViolation) naming the first offending coefficient.
void validate(const Params& p);

inline constexpr double kPermeabilityFloor = 1e-12;

// The operators below are pure and allocate their result. Cell inner products
// and face inner products are both weighted by hx*hy, under which
// divergence_faces_to_cc is exactly -transpose(gradient_cc_to_faces).

/// Face-normal differences of C; wall-normal faces are 0.
FaceVectorField gradient_cc_to_faces(const ScalarField& c);

ScalarField divergence_faces_to_cc(const FaceVectorField& w);

/// 5-point Laplacian with mirror ghosts (zero normal flux).
ScalarField laplacian_neumann(const ScalarField& c);

/// Componentwise 5-point Laplacian on interior faces, reflection ghosts for
/// the tangential neighbours, structural zeros as wall-normal neighbours.
FaceVectorField laplacian_dirichlet_velocity(const FaceVectorField& w);

/// Skew-symmetric advection 1/2 [div(U C_f) + avg(U . grad C)].
/// (advect_scalar_skew(U, C), C) vanishes for every U with zero wall-normal entries.
ScalarField advect_scalar_skew(const FaceVectorField& w, const ScalarField& c);

/// -delta_hat * grad(C) * avg(lap C) on interior faces.
FaceVectorField korteweg_force(const ScalarField& c, double delta_hat);

/// Per-face drag coefficient mu (alpha + beta C_face). Interior faces average
/// the two adjacent cells; wall faces take the single adjacent cell.
/// Throws Error(SingularPermeability) when alpha + beta C_face < kPermeabilityFloor.
FaceVectorField drag_coefficient(const ScalarField& c, const Params& p);

/// Cell-centred Q(C) - (delta_hat/2)|grad C|^2 with
/// Q(C) = -(1/3) delta_hat |grad C|^2 + (2/3) gamma lap C and |grad C|^2 taken
/// as the average of the squared face gradients around the cell.
ScalarField q_correction(const ScalarField& c, const Params& p);

// Inner products and small helpers shared by the solvers and diagnostics.
double dot(const ScalarField& a, const ScalarField& b);
double dot(const FaceVectorField& a, const FaceVectorField& b);
double mean(const ScalarField& a);
void remove_mean(ScalarField& a);

}  // namespace bksim
