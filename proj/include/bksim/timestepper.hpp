#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "bksim/grid.hpp"
#include "bksim/operators.hpp"
#include "bksim/poisson.hpp"

namespace bksim {

/// Evolving solution. p_tilde is the modified pressure (Korteweg gradient
/// terms absorbed) and is kept at zero mean.
struct State {
    double t = 0.0;
    FaceVectorField velocity;
    ScalarField concentration;
    ScalarField p_tilde;

    friend bool operator==(const State&, const State&) = default;
};

State make_state(const Grid& g, double t = 0.0);

/// Body force and (optionally) a volumetric source in the concentration
/// equation, evaluated at the start of each step.
class SourceTerms {
public:
    virtual ~SourceTerms() = default;
    /// Writes f(t) on interior faces; wall-normal entries must stay 0.
    virtual void velocity_source(double t, FaceVectorField& out) const = 0;
    /// Returns false when there is no concentration source.
    virtual bool scalar_source(double /*t*/, ScalarField& /*out*/) const { return false; }
    virtual bool is_zero() const { return false; }
};

enum class ForcingKind { Zero, ConstantVector, Vortex };

/// Body forces available from configuration. Vortex is the solenoidal field
/// amplitude * curl(s(x)^2 s(y)^2) / pi, with s(x) = sin(pi x / lx); it vanishes
/// on the walls and has peak speed `amplitude` on the unit square.
struct Forcing final : SourceTerms {
    ForcingKind kind = ForcingKind::Zero;
    double fx = 0.0;
    double fy = 0.0;
    double amplitude = 0.0;

    void velocity_source(double t, FaceVectorField& out) const override;
    bool is_zero() const override;
};

/// Samples the discretely divergence-free field with streamfunction
/// amplitude * s(x)^2 s(y)^2 / pi at cell corners; shared by the vortex
/// forcing and the scenario initial velocities.
FaceVectorField vortex_field(const Grid& g, double amplitude);

struct StepOptions {
    CgOptions cg;
    bool cfl_override = false;
    double cfl_constant = 0.4;
};

/// c * min(h / (|U|max + eps), h^2 / (delta_hat |lap C|max + eps)), capped at 1e300.
double max_stable_dt(const State& s, const Params& p, double cfl_constant = 0.4);

inline constexpr double kUnboundedDt = 1e300;

struct Projection {
    FaceVectorField velocity;
    ScalarField phi;  ///< zero-mean potential removed from the input
};

/// Helmholtz-Hodge projection U - grad(phi) with lap(phi) = div(U).
Projection project(const FaceVectorField& w, const CosinePlan& plan);

struct StepStats {
    int cg_iterations = 0;
    double cg_residual = 0.0;
};

/// One IMEX step:
///  1. (I + dt g)(I - dt d lap) C* = C - dt advect(U, C) [+ dt S_C]
///  2. [(1 + dt drag(C*)) - dt mu_e L_D] U* = U + dt (korteweg(C*) + f)
///  3. U_new, phi = project(U*); p_tilde = phi / dt at zero mean
/// Keeps a pointer to `sources`, which must outlive the stepper.
class Stepper {
public:
    Stepper(const Grid& g, Params params, ScalarField reaction, const SourceTerms& sources,
            StepOptions opts = {});

    const Grid& grid() const { return plan_.grid(); }
    const CosinePlan& plan() const { return plan_; }
    const Params& params() const { return params_; }
    const ScalarField& reaction() const { return reaction_; }
    const StepOptions& options() const { return opts_; }

    /// Throws CflViolation, SingularPermeability or NoConvergence.
    State step(const State& s, double dt, StepStats* stats = nullptr) const;

private:
    CosinePlan plan_;
    Params params_;
    ScalarField reaction_;
    const SourceTerms* sources_;
    StepOptions opts_;
};

struct RunSchedule {
    double dt = 0.0;
    double t_end = 0.0;
    int record_every = 1;
    int snapshot_every = 0;  ///< 0 disables periodic snapshots
};

/// Step sizes used to go from t0 to t_end: full steps of dt, then one
/// shortened step landing exactly on t_end when needed.
std::vector<double> schedule_steps(double t0, double t_end, double dt);

struct RunCallbacks {
    /// Called with the step index (0 = initial state) on every recording step
    /// and on the final step.
    std::function<void(int step, const State&, const StepStats&, double dt_used)> on_record;
    std::function<void(int step, const State&)> on_snapshot;
};

/// Advances `initial` to t_end. Throws Error(NonFinite) naming the step when a
/// field stops being finite; solver errors propagate.
State run(const Stepper& stepper, const State& initial, const RunSchedule& schedule,
          const RunCallbacks& callbacks = {});

}  // namespace bksim
