#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bksim {

/// Uniform rectangular MAC mesh on [0,lx] x [0,ly].
///
/// Cell (i,j) is centred at ((i+1/2)hx, (j+1/2)hy). x-face (i,j), i in [0,nx],
/// sits at (i hx, (j+1/2)hy); y-face (i,j), j in [0,ny], at ((i+1/2)hx, j hy).
struct Grid {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double hx = 0.0;
    double hy = 0.0;

    double cell_volume() const { return hx * hy; }
    double hmin() const { return hx < hy ? hx : hy; }
    std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t xfaces() const { return static_cast<std::size_t>(nx + 1) * ny; }
    std::size_t yfaces() const { return static_cast<std::size_t>(nx) * (ny + 1); }

    double xc(int i) const { return (i + 0.5) * hx; }
    double yc(int j) const { return (j + 0.5) * hy; }
    double xn(int i) const { return i * hx; }
    double yn(int j) const { return j * hy; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Throws Error(InvalidArgument) for nx or ny below 4 or non-positive lengths.
Grid make_grid(int nx, int ny, double lx, double ly);

/// Cell-centred samples, row-major in (i,j): index i*ny + j.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g, double value = 0.0)
        : grid_(g), values_(g.cells(), value) {}

    const Grid& grid() const { return grid_; }

    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.ny + j]; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.ny + j]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    bool all_finite() const;

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Face-centred velocity: u on x-faces ((nx+1) x ny, index i*ny + j) and v on
/// y-faces (nx x (ny+1), index i*(ny+1) + j).
///
/// The wall-normal entries u(0,.), u(nx,.), v(.,0), v(.,ny) are structural
/// zeros; every operator in the library leaves them at 0.
class FaceVectorField {
public:
    FaceVectorField() = default;
    explicit FaceVectorField(const Grid& g)
        : grid_(g), u_(g.xfaces(), 0.0), v_(g.yfaces(), 0.0) {}

    const Grid& grid() const { return grid_; }

    double& u(int i, int j) { return u_[static_cast<std::size_t>(i) * grid_.ny + j]; }
    double u(int i, int j) const { return u_[static_cast<std::size_t>(i) * grid_.ny + j]; }
    double& v(int i, int j) { return v_[static_cast<std::size_t>(i) * (grid_.ny + 1) + j]; }
    double v(int i, int j) const { return v_[static_cast<std::size_t>(i) * (grid_.ny + 1) + j]; }

    std::span<double> u_values() { return u_; }
    std::span<const double> u_values() const { return u_; }
    std::span<double> v_values() { return v_; }
    std::span<const double> v_values() const { return v_; }

    /// Re-zero the wall-normal entries.
    void enforce_no_penetration();
    bool no_penetration_holds() const;
    bool all_finite() const;

    friend bool operator==(const FaceVectorField&, const FaceVectorField&) = default;

private:
    Grid grid_;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Dense (nx+2) x (ny+2) array with one ghost layer; (i,j) in [-1,nx] x [-1,ny].
class GhostedScalar {
public:
    explicit GhostedScalar(const Grid& g)
        : nx_(g.nx), ny_(g.ny), values_(static_cast<std::size_t>(g.nx + 2) * (g.ny + 2), 0.0) {}

    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i + 1) * (ny_ + 2) + (j + 1)]; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i + 1) * (ny_ + 2) + (j + 1)]; }

private:
    int nx_;
    int ny_;
    std::vector<double> values_;
};

/// Mirror ghosts: ghost value equals the adjacent interior value, so the
/// one-sided normal difference across every wall is exactly zero.
/// Corner ghosts are never read by the 5-point stencils and are left at 0.
GhostedScalar ghost_scalar_neumann(const ScalarField& c);

/// Tangential components extended by one ghost row/column.
///
/// u gets ghost rows j = -1 and j = ny (index range [0,nx] x [-1,ny]);
/// v gets ghost columns i = -1 and i = nx (index range [-1,nx] x [0,ny]).
/// Ghost = -interior, so the value interpolated to the wall is zero.
struct GhostedVelocity {
    int nx = 0;
    int ny = 0;
    std::vector<double> u;  // (nx+1) x (ny+2)
    std::vector<double> v;  // (nx+2) x (ny+1)

    double u_at(int i, int j) const { return u[static_cast<std::size_t>(i) * (ny + 2) + (j + 1)]; }
    double v_at(int i, int j) const { return v[static_cast<std::size_t>(i + 1) * (ny + 1) + j]; }
};

GhostedVelocity ghost_velocity_noslip(const FaceVectorField& w);

}  // namespace bksim
