#include "bksim/operators.hpp"

#include <cmath>
#include <sstream>

#include "bksim/error.hpp"

namespace bksim {

void validate(const Params& p) {
    auto require = [](bool ok, const char* key, const char* rule) {
        if (!ok) throw Error(ErrorCode::ConstraintViolation, std::string(key) + ": " + rule);
    };
    require(p.mu > 0.0 && std::isfinite(p.mu), "mu", "must be > 0");
    require(p.mu_e > 0.0 && std::isfinite(p.mu_e), "mu_e", "must be > 0");
    require(p.d > 0.0 && std::isfinite(p.d), "d", "must be > 0");
    require(p.alpha > 0.0 && std::isfinite(p.alpha), "alpha", "must be > 0");
    require(p.beta >= 0.0 && std::isfinite(p.beta), "beta", "must be >= 0");
    require(p.delta_hat > 0.0 && std::isfinite(p.delta_hat), "delta_hat", "must be > 0");
    require(p.gamma > 0.0 && std::isfinite(p.gamma), "gamma", "must be > 0");
}

FaceVectorField gradient_cc_to_faces(const ScalarField& c) {
    const Grid& g = c.grid();
    FaceVectorField out(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out.u(i, j) = (c(i, j) - c(i - 1, j)) / g.hx;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) out.v(i, j) = (c(i, j) - c(i, j - 1)) / g.hy;
    return out;
}

ScalarField divergence_faces_to_cc(const FaceVectorField& w) {
    const Grid& g = w.grid();
    ScalarField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            out(i, j) = (w.u(i + 1, j) - w.u(i, j)) / g.hx + (w.v(i, j + 1) - w.v(i, j)) / g.hy;
    return out;
}

ScalarField laplacian_neumann(const ScalarField& c) {
    const Grid& g = c.grid();
    const GhostedScalar e = ghost_scalar_neumann(c);
    const double ax = 1.0 / (g.hx * g.hx), ay = 1.0 / (g.hy * g.hy);
    ScalarField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double cc = e(i, j);
            out(i, j) = ax * ((e(i + 1, j) - cc) - (cc - e(i - 1, j))) +
                        ay * ((e(i, j + 1) - cc) - (cc - e(i, j - 1)));
        }
    return out;
}

FaceVectorField laplacian_dirichlet_velocity(const FaceVectorField& w) {
    const Grid& g = w.grid();
    const GhostedVelocity e = ghost_velocity_noslip(w);
    const double ax = 1.0 / (g.hx * g.hx), ay = 1.0 / (g.hy * g.hy);
    FaceVectorField out(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double c = e.u_at(i, j);
            out.u(i, j) = ax * (e.u_at(i + 1, j) - 2.0 * c + e.u_at(i - 1, j)) +
                          ay * (e.u_at(i, j + 1) - 2.0 * c + e.u_at(i, j - 1));
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            const double c = e.v_at(i, j);
            out.v(i, j) = ax * (e.v_at(i + 1, j) - 2.0 * c + e.v_at(i - 1, j)) +
                          ay * (e.v_at(i, j + 1) - 2.0 * c + e.v_at(i, j - 1));
        }
    return out;
}

ScalarField advect_scalar_skew(const FaceVectorField& w, const ScalarField& c) {
    const Grid& g = c.grid();
    // Face fluxes U * C_face and face products U * grad C; both vanish on walls.
    FaceVectorField flux(g);
    FaceVectorField work(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double u = w.u(i, j);
            flux.u(i, j) = u * 0.5 * (c(i - 1, j) + c(i, j));
            work.u(i, j) = u * (c(i, j) - c(i - 1, j)) / g.hx;
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            const double v = w.v(i, j);
            flux.v(i, j) = v * 0.5 * (c(i, j - 1) + c(i, j));
            work.v(i, j) = v * (c(i, j) - c(i, j - 1)) / g.hy;
        }
    ScalarField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double div = (flux.u(i + 1, j) - flux.u(i, j)) / g.hx +
                               (flux.v(i, j + 1) - flux.v(i, j)) / g.hy;
            const double conv = 0.5 * (work.u(i, j) + work.u(i + 1, j)) +
                                0.5 * (work.v(i, j) + work.v(i, j + 1));
            out(i, j) = 0.5 * (div + conv);
        }
    return out;
}

FaceVectorField korteweg_force(const ScalarField& c, double delta_hat) {
    const Grid& g = c.grid();
    const ScalarField lap = laplacian_neumann(c);
    FaceVectorField out(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            out.u(i, j) = -delta_hat * ((c(i, j) - c(i - 1, j)) / g.hx) * 0.5 * (lap(i - 1, j) + lap(i, j));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j)
            out.v(i, j) = -delta_hat * ((c(i, j) - c(i, j - 1)) / g.hy) * 0.5 * (lap(i, j - 1) + lap(i, j));
    return out;
}

FaceVectorField drag_coefficient(const ScalarField& c, const Params& p) {
    const Grid& g = c.grid();
    FaceVectorField out(g);
    double worst = INFINITY;
    auto coef = [&](double cface) {
        const double k = p.alpha + p.beta * cface;
        if (k < worst) worst = k;
        return p.mu * k;
    };
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double cl = c(i > 0 ? i - 1 : 0, j);
            const double cr = c(i < g.nx ? i : g.nx - 1, j);
            out.u(i, j) = coef(0.5 * (cl + cr));
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) {
            const double cb = c(i, j > 0 ? j - 1 : 0);
            const double ct = c(i, j < g.ny ? j : g.ny - 1);
            out.v(i, j) = coef(0.5 * (cb + ct));
        }
    if (!(worst >= kPermeabilityFloor)) {
        std::ostringstream msg;
        msg << "alpha + beta*C reached " << worst << " (< " << kPermeabilityFloor << ")";
        throw Error(ErrorCode::SingularPermeability, msg.str());
    }
    return out;
}

ScalarField q_correction(const ScalarField& c, const Params& p) {
    const Grid& g = c.grid();
    const FaceVectorField grad = gradient_cc_to_faces(c);
    const ScalarField lap = laplacian_neumann(c);
    ScalarField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double gx0 = grad.u(i, j), gx1 = grad.u(i + 1, j);
            const double gy0 = grad.v(i, j), gy1 = grad.v(i, j + 1);
            const double sq = 0.5 * (gx0 * gx0 + gx1 * gx1) + 0.5 * (gy0 * gy0 + gy1 * gy1);
            const double q = -p.delta_hat * sq / 3.0 + 2.0 * p.gamma * lap(i, j) / 3.0;
            out(i, j) = q - 0.5 * p.delta_hat * sq;
        }
    return out;
}

double dot(const ScalarField& a, const ScalarField& b) {
    const auto av = a.values();
    const auto bv = b.values();
    double s = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s * a.grid().cell_volume();
}

double dot(const FaceVectorField& a, const FaceVectorField& b) {
    double s = 0.0;
    const auto au = a.u_values(), bu = b.u_values();
    for (std::size_t k = 0; k < au.size(); ++k) s += au[k] * bu[k];
    const auto av = a.v_values(), bv = b.v_values();
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s * a.grid().cell_volume();
}

double mean(const ScalarField& a) {
    double s = 0.0;
    for (double x : a.values()) s += x;
    return s / static_cast<double>(a.size());
}

void remove_mean(ScalarField& a) {
    // Second pass removes the rounding left by the first.
    for (int pass = 0; pass < 2; ++pass) {
        const double m = mean(a);
        for (double& x : a.values()) x -= m;
    }
}

}  // namespace bksim
