#include <doctest.h>

#include <vector>

#include "bksim/error.hpp"
#include "bksim/operators.hpp"
#include "support.hpp"

using namespace bksim;
using namespace testing;

namespace {

const std::vector<Grid>& oracle_grids() {
    static const std::vector<Grid> grids = {make_grid(4, 4, 1.0, 1.0), make_grid(5, 7, 1.3, 0.9),
                                            make_grid(8, 6, 2.0, 1.0), make_grid(8, 8, 1.0, 1.0)};
    return grids;
}

constexpr double kOracleTol = 1e-12;

}  // namespace

TEST_CASE("gradient matches its dense oracle") {
    for (const Grid& g : oracle_grids()) {
        const MatrixXd lib = matrix_of_cell_op(g, nfaces(g), [](const ScalarField& c) {
            return vec(gradient_cc_to_faces(c));
        });
        CHECK(max_abs(lib - gradient_matrix(g)) <= kOracleTol);
    }
}

TEST_CASE("divergence matches its dense oracle") {
    for (const Grid& g : oracle_grids()) {
        const MatrixXd lib = matrix_of_face_op(g, ncells(g), [](const FaceVectorField& w) {
            return vec(divergence_faces_to_cc(w));
        });
        CHECK(max_abs(lib - divergence_matrix(g)) <= kOracleTol);
    }
}

TEST_CASE("divergence is minus the adjoint of gradient on interior faces") {
    for (const Grid& g : oracle_grids()) {
        const MatrixXd G = matrix_of_cell_op(g, nfaces(g), [](const ScalarField& c) {
            return vec(gradient_cc_to_faces(c));
        });
        const MatrixXd D = matrix_of_face_op(g, ncells(g), [](const FaceVectorField& w) {
            return vec(divergence_faces_to_cc(w));
        });
        // Both inner products carry the same hx*hy weight, so the plain
        // transpose is the adjoint.
        CHECK(max_abs(D * interior_face_mask(g) + G.transpose()) <= 1e-13);

        const ScalarField c = random_scalar(g, 11);
        const FaceVectorField w = random_faces(g, 12);
        const double lhs = dot(gradient_cc_to_faces(c), w);
        const double rhs = -dot(c, divergence_faces_to_cc(w));
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("Neumann Laplacian matches its dense oracle and equals div grad") {
    for (const Grid& g : oracle_grids()) {
        const MatrixXd lib = matrix_of_cell_op(g, ncells(g), [](const ScalarField& c) {
            return vec(laplacian_neumann(c));
        });
        const MatrixXd oracle = neumann_laplacian_matrix(g);
        CHECK(max_abs(lib - oracle) <= kOracleTol * max_abs(oracle));
        CHECK(max_abs(lib - divergence_matrix(g) * gradient_matrix(g)) <= kOracleTol * max_abs(oracle));
        CHECK(max_abs(lib - lib.transpose()) == 0.0);
        // Constants are in the kernel.
        CHECK((lib * VectorXd::Ones(ncells(g))).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("velocity Laplacian matches its dense oracle") {
    for (const Grid& g : oracle_grids()) {
        const MatrixXd mask = interior_face_mask(g);
        const MatrixXd lib = matrix_of_face_op(g, nfaces(g), [](const FaceVectorField& w) {
            return vec(laplacian_dirichlet_velocity(w));
        });
        const MatrixXd oracle = dirichlet_laplacian_matrix(g);
        // Wall entries are structural zeros: compare the interior block.
        CHECK(max_abs(mask * lib * mask - oracle) <= kOracleTol * max_abs(oracle));
        CHECK(max_abs(mask * lib * mask - (mask * lib * mask).transpose()) <= 1e-12);
        // Negative definite on interior faces.
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(restrict_to(oracle, interior_face_indices(g)));
        CHECK(es.eigenvalues().maxCoeff() < 0.0);
    }
}

TEST_CASE("skew advection matches its dense oracle") {
    int seed = 100;
    for (const Grid& g : oracle_grids()) {
        const FaceVectorField w = random_faces(g, seed++);
        const MatrixXd lib = matrix_of_cell_op(g, ncells(g), [&](const ScalarField& c) {
            return vec(advect_scalar_skew(w, c));
        });
        const MatrixXd oracle = advection_matrix(w);
        CHECK(max_abs(lib - oracle) <= kOracleTol);
        // Skew-symmetric for any velocity with zero wall-normal entries.
        CHECK(max_abs(lib + lib.transpose()) <= kOracleTol);
    }
}

TEST_CASE("Korteweg force matches its dense oracle") {
    int seed = 200;
    for (const Grid& g : oracle_grids()) {
        const ScalarField c = random_scalar(g, seed++);
        const double dh = 0.37;
        const VectorXd cv = vec(c);
        const VectorXd grad = gradient_matrix(g) * cv;
        const VectorXd lap_face = cell_to_face_average(g) * (neumann_laplacian_matrix(g) * cv);
        const VectorXd oracle = -dh * grad.cwiseProduct(lap_face);
        const VectorXd lib = vec(korteweg_force(c, dh));
        CHECK((lib - oracle).cwiseAbs().maxCoeff() <= kOracleTol * (1.0 + oracle.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("Q correction matches its dense oracle") {
    int seed = 300;
    for (const Grid& g : oracle_grids()) {
        const ScalarField c = random_scalar(g, seed++);
        Params p;
        p.delta_hat = 0.3;
        p.gamma = 0.7;
        const VectorXd cv = vec(c);
        const VectorXd grad = gradient_matrix(g) * cv;
        const VectorXd sq = face_to_cell_half_sums(g) * grad.cwiseProduct(grad);
        const VectorXd lap = neumann_laplacian_matrix(g) * cv;
        const VectorXd oracle = -(p.delta_hat / 3.0) * sq + (2.0 * p.gamma / 3.0) * lap - 0.5 * p.delta_hat * sq;
        const VectorXd lib = vec(q_correction(c, p));
        CHECK((lib - oracle).cwiseAbs().maxCoeff() <= kOracleTol * (1.0 + oracle.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("operators are linear") {
    const Grid g = make_grid(7, 5, 1.0, 1.0);
    const ScalarField a = random_scalar(g, 1), b = random_scalar(g, 2);
    ScalarField combo(g);
    for (std::size_t k = 0; k < combo.size(); ++k) combo.values()[k] = 2.5 * a.values()[k] - 0.75 * b.values()[k];
    const VectorXd lhs = vec(laplacian_neumann(combo));
    const VectorXd rhs = 2.5 * vec(laplacian_neumann(a)) - 0.75 * vec(laplacian_neumann(b));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-11);
    const VectorXd glhs = vec(gradient_cc_to_faces(combo));
    const VectorXd grhs = 2.5 * vec(gradient_cc_to_faces(a)) - 0.75 * vec(gradient_cc_to_faces(b));
    CHECK((glhs - grhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Korteweg force is cubic in C and vanishes for constants") {
    const Grid g = make_grid(6, 6, 1.0, 1.0);
    const ScalarField c = random_scalar(g, 5);
    ScalarField c2(g);
    for (std::size_t k = 0; k < c.size(); ++k) c2.values()[k] = 2.0 * c.values()[k];
    const VectorXd f1 = vec(korteweg_force(c, 0.1));
    const VectorXd f2 = vec(korteweg_force(c2, 0.1));
    CHECK((f2 - 4.0 * f1).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + f2.cwiseAbs().maxCoeff()));
    CHECK(vec(korteweg_force(ScalarField(g, 0.8), 0.1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("advection is energy neutral for projected and arbitrary velocities") {
    for (const Grid& g : oracle_grids()) {
        const ScalarField c = random_scalar(g, 41);
        const FaceVectorField w = random_faces(g, 42);
        const double cc = dot(c, c);
        CHECK(std::abs(dot(advect_scalar_skew(w, c), c)) <= 1e-12 * cc);
    }
}

TEST_CASE("advection of a constant by a divergence-free field vanishes") {
    const Grid g = make_grid(8, 8, 1.0, 1.0);
    // Discrete curl of a corner streamfunction is exactly divergence-free.
    std::vector<double> psi((g.nx + 1) * (g.ny + 1));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            psi[i * (g.ny + 1) + j] = (i == 0 || j == 0 || i == g.nx || j == g.ny) ? 0.0 : dist(rng);
    FaceVectorField w(g);
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) w.u(i, j) = (psi[i * (g.ny + 1) + j + 1] - psi[i * (g.ny + 1) + j]) / g.hy;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) w.v(i, j) = -(psi[(i + 1) * (g.ny + 1) + j] - psi[i * (g.ny + 1) + j]) / g.hx;
    CHECK(w.no_penetration_holds());
    const ScalarField a = advect_scalar_skew(w, ScalarField(g, 3.0));
    for (double x : a.values()) CHECK(std::abs(x) <= 1e-12);
}

TEST_CASE("drag coefficient averages interior faces and copies cells at walls") {
    const Grid g = make_grid(4, 4, 1.0, 1.0);
    const ScalarField c = random_scalar(g, 8, 0.0, 1.0);
    Params p;
    p.mu = 2.0;
    p.alpha = 1.5;
    p.beta = 0.5;
    const FaceVectorField k = drag_coefficient(c, p);
    CHECK(k.u(2, 1) == doctest::Approx(2.0 * (1.5 + 0.5 * 0.5 * (c(1, 1) + c(2, 1)))).epsilon(1e-14));
    CHECK(k.u(0, 3) == doctest::Approx(2.0 * (1.5 + 0.5 * c(0, 3))).epsilon(1e-14));
    CHECK(k.v(3, 4) == doctest::Approx(2.0 * (1.5 + 0.5 * c(3, 3))).epsilon(1e-14));
}

TEST_CASE("drag coefficient raises SingularPermeability below the floor") {
    const Grid g = make_grid(4, 4, 1.0, 1.0);
    Params p;
    p.alpha = 1.0;
    p.beta = 1.0;
    ScalarField c(g, 0.0);
    c(0, 2) = -1.0;  // the wall face beside this cell sees alpha + beta C = 0
    try {
        drag_coefficient(c, p);
        FAIL("expected SingularPermeability");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularPermeability);
    }
    c(0, 2) = -1.0 + 2e-12;  // just above the floor
    CHECK_NOTHROW(drag_coefficient(c, p));
}

TEST_CASE("parameter validation") {
    Params p;
    CHECK_NOTHROW(validate(p));
    for (auto mutate : std::vector<void (*)(Params&)>{
             [](Params& q) { q.alpha = 0.0; }, [](Params& q) { q.alpha = -1.0; },
             [](Params& q) { q.beta = -0.1; }, [](Params& q) { q.mu = 0.0; },
             [](Params& q) { q.mu_e = 0.0; }, [](Params& q) { q.d = 0.0; },
             [](Params& q) { q.delta_hat = 0.0; }, [](Params& q) { q.gamma = 0.0; },
             [](Params& q) { q.d = std::nan(""); }}) {
        Params q;
        mutate(q);
        try {
            validate(q);
            FAIL("expected ConstraintViolation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ConstraintViolation);
        }
    }
}

TEST_CASE("remove_mean leaves a zero-mean field") {
    const Grid g = make_grid(16, 16, 1.0, 1.0);
    ScalarField c = random_scalar(g, 77, 1e6, 1e6 + 1.0);
    remove_mean(c);
    CHECK(std::abs(mean(c)) <= 1e-13);
}
