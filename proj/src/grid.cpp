#include "bksim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bksim/error.hpp"

namespace bksim {

Grid make_grid(int nx, int ny, double lx, double ly) {
    if (nx < 4) throw Error(ErrorCode::InvalidArgument, "nx too small: " + std::to_string(nx) + " < 4");
    if (ny < 4) throw Error(ErrorCode::InvalidArgument, "ny too small: " + std::to_string(ny) + " < 4");
    if (!(lx > 0.0) || !std::isfinite(lx)) throw Error(ErrorCode::InvalidArgument, "lx must be finite and > 0");
    if (!(ly > 0.0) || !std::isfinite(ly)) throw Error(ErrorCode::InvalidArgument, "ly must be finite and > 0");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.hx = lx / nx;
    g.hy = ly / ny;
    return g;
}

namespace {
bool finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}
}  // namespace

bool ScalarField::all_finite() const { return finite(values_); }

bool FaceVectorField::all_finite() const { return finite(u_) && finite(v_); }

void FaceVectorField::enforce_no_penetration() {
    const int nx = grid_.nx, ny = grid_.ny;
    for (int j = 0; j < ny; ++j) {
        u(0, j) = 0.0;
        u(nx, j) = 0.0;
    }
    for (int i = 0; i < nx; ++i) {
        v(i, 0) = 0.0;
        v(i, ny) = 0.0;
    }
}

bool FaceVectorField::no_penetration_holds() const {
    const int nx = grid_.nx, ny = grid_.ny;
    for (int j = 0; j < ny; ++j)
        if (u(0, j) != 0.0 || u(nx, j) != 0.0) return false;
    for (int i = 0; i < nx; ++i)
        if (v(i, 0) != 0.0 || v(i, ny) != 0.0) return false;
    return true;
}

GhostedScalar ghost_scalar_neumann(const ScalarField& c) {
    const Grid& g = c.grid();
    GhostedScalar e(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) e(i, j) = c(i, j);
    for (int j = 0; j < g.ny; ++j) {
        e(-1, j) = c(0, j);
        e(g.nx, j) = c(g.nx - 1, j);
    }
    for (int i = 0; i < g.nx; ++i) {
        e(i, -1) = c(i, 0);
        e(i, g.ny) = c(i, g.ny - 1);
    }
    return e;
}

GhostedVelocity ghost_velocity_noslip(const FaceVectorField& w) {
    const Grid& g = w.grid();
    const int nx = g.nx, ny = g.ny;
    GhostedVelocity e;
    e.nx = nx;
    e.ny = ny;
    e.u.assign(static_cast<std::size_t>(nx + 1) * (ny + 2), 0.0);
    e.v.assign(static_cast<std::size_t>(nx + 2) * (ny + 1), 0.0);
    auto U = [&](int i, int j) -> double& { return e.u[static_cast<std::size_t>(i) * (ny + 2) + (j + 1)]; };
    auto V = [&](int i, int j) -> double& { return e.v[static_cast<std::size_t>(i + 1) * (ny + 1) + j]; };
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j < ny; ++j) U(i, j) = w.u(i, j);
        U(i, -1) = -w.u(i, 0);
        U(i, ny) = -w.u(i, ny - 1);
    }
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) V(i, j) = w.v(i, j);
        V(-1, j) = -w.v(0, j);
        V(nx, j) = -w.v(nx - 1, j);
    }
    return e;
}

}  // namespace bksim
