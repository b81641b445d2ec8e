#pragma once

#include <string>
#include <vector>

#include "bksim/grid.hpp"
#include "bksim/operators.hpp"
#include "bksim/timestepper.hpp"

namespace bksim {

/// Closed-form solution used for verification:
///   psi = A s(x)^2 s(y)^2 cos(omega t),  u = (d psi/dy, -d psi/dx)
///   C   = 1 + B c(x) c(y) exp(-sigma t),  p = 0
/// with s(x) = sin(pi x/lx), c(x) = cos(pi x/lx). u vanishes on the walls, is
/// divergence-free, and C has zero normal derivative.
struct ManufacturedCase {
    double A = 0.1;
    double B = 0.5;
    double omega = 3.0;
    double sigma = 1.0;
    double g = 1.0;  ///< uniform reaction rate used with this case

    double u(double x, double y, double t, const Grid& gr) const;
    double v(double x, double y, double t, const Grid& gr) const;
    double c(double x, double y, double t, const Grid& gr) const;
    double stream(double x, double y, double t, const Grid& gr) const;

    friend bool operator==(const ManufacturedCase&, const ManufacturedCase&) = default;
};

struct PointSources {
    double su = 0.0;
    double sv = 0.0;
    double sc = 0.0;
};

/// Pointwise sources making the case an exact solution of the continuous
/// system with the implemented Korteweg force -delta_hat grad C lap C.
PointSources mms_point_sources(const ManufacturedCase& mc, const Params& p, const Grid& gr,
                               double x, double y, double t);

/// Face/cell sampled sources; wall-normal faces are 0.
class ManufacturedSources final : public SourceTerms {
public:
    ManufacturedSources(ManufacturedCase mc, Params p) : case_(mc), params_(p) {}
    void velocity_source(double t, FaceVectorField& out) const override;
    bool scalar_source(double t, ScalarField& out) const override;

private:
    ManufacturedCase case_;
    Params params_;
};

/// Cell-sampled C and a discretely divergence-free velocity built from corner
/// samples of the streamfunction.
State manufactured_state(const ManufacturedCase& mc, const Grid& g, double t);

/// Face-sampled exact velocity (for error measurement).
FaceVectorField sample_velocity(const ManufacturedCase& mc, const Grid& g, double t);
ScalarField sample_concentration(const ManufacturedCase& mc, const Grid& g, double t);

struct MmsLevel {
    int n = 0;
    double dt = 0.0;
};

struct ConvergenceRow {
    int n = 0;
    double dt = 0.0;
    double err_C = 0.0;
    double err_U = 0.0;
    double order_C = 0.0;  ///< NaN on the first row
    double order_U = 0.0;
};

struct MmsSetup {
    double lx = 1.0;
    double ly = 1.0;
    double t_final = 0.1;
    StepOptions step;
};

/// Runs each level from the t = 0 slice to t_final and reports L2 errors of C
/// and U with observed orders log(e_prev/e)/log(ratio of the refined quantity):
/// h for spatial studies, dt when n is held fixed.
std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mc, const Params& p,
                                              const std::vector<MmsLevel>& levels,
                                              const MmsSetup& setup = {});

/// Temporal refinement at fixed n. Errors are measured against a run with
/// dt_ref = smallest dt / reference_factor on the same grid, which removes the
/// spatial error from the comparison; orders use the dt ratio.
std::vector<ConvergenceRow> temporal_study(const ManufacturedCase& mc, const Params& p, int n,
                                           const std::vector<double>& dts, const MmsSetup& setup = {},
                                           int reference_factor = 16);

/// n doubling from n0 with dt shrinking by 4 each level (dt proportional to h^2).
std::vector<MmsLevel> spatial_levels(int n0, double dt0, int count);
/// Fixed n, dt halving.
std::vector<MmsLevel> temporal_levels(int n, double dt0, int count);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace bksim
