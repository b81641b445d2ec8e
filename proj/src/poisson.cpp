#include "bksim/poisson.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bksim/error.hpp"
#include "bksim/operators.hpp"

namespace bksim {

namespace {

// cos(pi * m / (2n)) with m reduced modulo 4n so large k*i stay accurate.
double half_cos(long m, long n) {
    m %= 4 * n;
    return std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(2 * n));
}

std::vector<double> cosine_table(int n) {
    std::vector<double> t(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(k) * n + i] = half_cos(static_cast<long>(k) * (2 * i + 1), n);
    return t;
}

std::vector<double> eigenvalues_1d(int n, double h) {
    std::vector<double> lam(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sin(std::numbers::pi * k / (2.0 * n));
        lam[k] = 4.0 * s * s / (h * h);
    }
    return lam;
}

}  // namespace

CosinePlan::CosinePlan(const Grid& g)
    : grid_(g),
      lambda_x_(eigenvalues_1d(g.nx, g.hx)),
      lambda_y_(eigenvalues_1d(g.ny, g.hy)),
      cos_x_(cosine_table(g.nx)),
      cos_y_(cosine_table(g.ny)) {}

void CosinePlan::forward(const ScalarField& in, std::vector<double>& out) const {
    const int nx = grid_.nx, ny = grid_.ny;
    std::vector<double> tmp(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int i = 0; i < nx; ++i) {
        const double* row = in.values().data() + static_cast<std::size_t>(i) * ny;
        for (int l = 0; l < ny; ++l) {
            const double* c = cos_y_.data() + static_cast<std::size_t>(l) * ny;
            double s = 0.0;
            for (int j = 0; j < ny; ++j) s += row[j] * c[j];
            tmp[static_cast<std::size_t>(i) * ny + l] = s;
        }
    }
    out.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int k = 0; k < nx; ++k) {
        double* dst = out.data() + static_cast<std::size_t>(k) * ny;
        for (int i = 0; i < nx; ++i) {
            const double c = cos_x_[static_cast<std::size_t>(k) * nx + i];
            const double* src = tmp.data() + static_cast<std::size_t>(i) * ny;
            for (int l = 0; l < ny; ++l) dst[l] += c * src[l];
        }
    }
}

void CosinePlan::inverse(const std::vector<double>& in, ScalarField& out) const {
    const int nx = grid_.nx, ny = grid_.ny;
    // x_i = X_0/n + (2/n) sum_{k>0} X_k cos_k(i), in each direction.
    std::vector<double> tmp(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int k = 0; k < nx; ++k) {
        const double wk = (k == 0 ? 1.0 : 2.0) / nx;
        const double* src = in.data() + static_cast<std::size_t>(k) * ny;
        for (int i = 0; i < nx; ++i) {
            const double c = wk * cos_x_[static_cast<std::size_t>(k) * nx + i];
            double* dst = tmp.data() + static_cast<std::size_t>(i) * ny;
            for (int l = 0; l < ny; ++l) dst[l] += c * src[l];
        }
    }
    std::vector<double> wy(ny);
    for (int l = 0; l < ny; ++l) wy[l] = (l == 0 ? 1.0 : 2.0) / ny;
    for (int i = 0; i < nx; ++i) {
        const double* row = tmp.data() + static_cast<std::size_t>(i) * ny;
        for (int j = 0; j < ny; ++j) {
            double s = 0.0;
            for (int l = 0; l < ny; ++l) s += wy[l] * row[l] * cos_y_[static_cast<std::size_t>(l) * ny + j];
            out(i, j) = s;
        }
    }
}

ScalarField cosine_mode(const Grid& g, int k, int l) {
    ScalarField m(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            m(i, j) = half_cos(static_cast<long>(k) * (2 * i + 1), g.nx) * half_cos(static_cast<long>(l) * (2 * j + 1), g.ny);
    return m;
}

PoissonSolution solve_poisson_neumann(const ScalarField& rhs, const CosinePlan& plan) {
    const Grid& g = plan.grid();
    std::vector<double> hat;
    plan.forward(rhs, hat);
    PoissonSolution sol{ScalarField(g), hat[0] / static_cast<double>(g.cells())};
    for (int k = 0; k < g.nx; ++k)
        for (int l = 0; l < g.ny; ++l) {
            double& x = hat[static_cast<std::size_t>(k) * g.ny + l];
            x = (k == 0 && l == 0) ? 0.0 : -x / plan.eigenvalue(k, l);
        }
    plan.inverse(hat, sol.phi);
    remove_mean(sol.phi);
    return sol;
}

ScalarField solve_helmholtz_neumann(const ScalarField& rhs, double sigma, const CosinePlan& plan) {
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "helmholtz sigma must be >= 0");
    if (sigma == 0.0) return rhs;
    const Grid& g = plan.grid();
    std::vector<double> hat;
    plan.forward(rhs, hat);
    for (int k = 0; k < g.nx; ++k)
        for (int l = 0; l < g.ny; ++l) hat[static_cast<std::size_t>(k) * g.ny + l] /= 1.0 + sigma * plan.eigenvalue(k, l);
    ScalarField out(g);
    plan.inverse(hat, out);
    return out;
}

FaceVectorField apply_momentum_operator(const FaceVectorField& w, const FaceVectorField& drag,
                                        double dt, double sigma) {
    FaceVectorField out = laplacian_dirichlet_velocity(w);
    const Grid& g = w.grid();
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            out.u(i, j) = (1.0 + dt * drag.u(i, j)) * w.u(i, j) - sigma * out.u(i, j);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j)
            out.v(i, j) = (1.0 + dt * drag.v(i, j)) * w.v(i, j) - sigma * out.v(i, j);
    return out;
}

namespace {

double raw_dot(const FaceVectorField& a, const FaceVectorField& b) {
    double s = 0.0;
    const auto au = a.u_values(), bu = b.u_values();
    for (std::size_t k = 0; k < au.size(); ++k) s += au[k] * bu[k];
    const auto av = a.v_values(), bv = b.v_values();
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s;
}

// y += a x over all entries; structural zeros stay zero because x has them.
void axpy(double a, const FaceVectorField& x, FaceVectorField& y) {
    auto yu = y.u_values();
    auto xu = x.u_values();
    for (std::size_t k = 0; k < yu.size(); ++k) yu[k] += a * xu[k];
    auto yv = y.v_values();
    auto xv = x.v_values();
    for (std::size_t k = 0; k < yv.size(); ++k) yv[k] += a * xv[k];
}

FaceVectorField momentum_diagonal(const Grid& g, const FaceVectorField& drag, double dt, double sigma) {
    const double ax = 1.0 / (g.hx * g.hx), ay = 1.0 / (g.hy * g.hy);
    FaceVectorField d(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double wall = (j == 0 ? ay : 0.0) + (j == g.ny - 1 ? ay : 0.0);
            d.u(i, j) = 1.0 + dt * drag.u(i, j) + sigma * (2.0 * ax + 2.0 * ay + wall);
        }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            const double wall = (i == 0 ? ax : 0.0) + (i == g.nx - 1 ? ax : 0.0);
            d.v(i, j) = 1.0 + dt * drag.v(i, j) + sigma * (2.0 * ax + 2.0 * ay + wall);
        }
    return d;
}

// z = r / diag on interior faces.
void precondition(const FaceVectorField& diag, const FaceVectorField& r, FaceVectorField& z) {
    const Grid& g = r.grid();
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) z.u(i, j) = r.u(i, j) / diag.u(i, j);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) z.v(i, j) = r.v(i, j) / diag.v(i, j);
}

}  // namespace

CgResult solve_momentum_helmholtz(const FaceVectorField& rhs, const FaceVectorField& drag,
                                  double dt, double sigma, const CgOptions& opts) {
    const Grid& g = rhs.grid();
    if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "cg tol must be > 0");
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : static_cast<int>(10 * g.cells());

    FaceVectorField b = rhs;
    b.enforce_no_penetration();
    CgResult res{FaceVectorField(g), 0, 0.0};
    const double bnorm = std::sqrt(raw_dot(b, b));
    if (bnorm == 0.0) return res;

    const FaceVectorField diag = opts.jacobi ? momentum_diagonal(g, drag, dt, sigma) : FaceVectorField();
    FaceVectorField& x = res.solution;
    FaceVectorField r = b;
    FaceVectorField z(g);
    if (opts.jacobi) precondition(diag, r, z);
    else z = r;
    FaceVectorField p = z;
    double rz = raw_dot(r, z);
    double rnorm = bnorm;

    int it = 0;
    while (rnorm > opts.tol * bnorm && it < max_iter) {
        const FaceVectorField ap = apply_momentum_operator(p, drag, dt, sigma);
        const double alpha = rz / raw_dot(p, ap);
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        ++it;
        rnorm = std::sqrt(raw_dot(r, r));
        if (opts.jacobi) precondition(diag, r, z);
        else z = r;
        const double rz_new = raw_dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        // p = z + beta p
        auto pu = p.u_values();
        auto zu = z.u_values();
        for (std::size_t k = 0; k < pu.size(); ++k) pu[k] = zu[k] + beta * pu[k];
        auto pv = p.v_values();
        auto zv = z.v_values();
        for (std::size_t k = 0; k < pv.size(); ++k) pv[k] = zv[k] + beta * pv[k];
    }
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (!(rnorm <= opts.tol * bnorm)) {
        std::ostringstream msg;
        msg << "momentum CG stopped after " << it << " iterations at relative residual "
            << res.relative_residual << " (tol " << opts.tol << ")";
        throw Error(ErrorCode::NoConvergence, msg.str());
    }
    return res;
}

}  // namespace bksim
