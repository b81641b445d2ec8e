#include "bksim/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bksim/error.hpp"

namespace bksim {

State make_state(const Grid& g, double t) {
    return State{t, FaceVectorField(g), ScalarField(g), ScalarField(g)};
}

FaceVectorField vortex_field(const Grid& g, double amplitude) {
    const double pi = std::numbers::pi;
    // Streamfunction at cell corners, exactly zero on the walls.
    std::vector<double> psi(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1), 0.0);
    auto at = [&](int i, int j) -> double& { return psi[static_cast<std::size_t>(i) * (g.ny + 1) + j]; };
    for (int i = 1; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) {
            const double sx = std::sin(pi * g.xn(i) / g.lx);
            const double sy = std::sin(pi * g.yn(j) / g.ly);
            at(i, j) = amplitude * sx * sx * sy * sy / pi;
        }
    FaceVectorField w(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) w.u(i, j) = (at(i, j + 1) - at(i, j)) / g.hy;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) w.v(i, j) = -(at(i + 1, j) - at(i, j)) / g.hx;
    return w;
}

void Forcing::velocity_source(double /*t*/, FaceVectorField& out) const {
    const Grid& g = out.grid();
    switch (kind) {
        case ForcingKind::Zero:
            out = FaceVectorField(g);
            break;
        case ForcingKind::ConstantVector:
            out = FaceVectorField(g);
            for (int i = 1; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) out.u(i, j) = fx;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 1; j < g.ny; ++j) out.v(i, j) = fy;
            break;
        case ForcingKind::Vortex:
            out = vortex_field(g, amplitude);
            break;
    }
}

bool Forcing::is_zero() const {
    switch (kind) {
        case ForcingKind::Zero: return true;
        case ForcingKind::ConstantVector: return fx == 0.0 && fy == 0.0;
        case ForcingKind::Vortex: return amplitude == 0.0;
    }
    return false;
}

double max_stable_dt(const State& s, const Params& p, double cfl_constant) {
    constexpr double eps = 1e-30;
    double umax = 0.0;
    for (double x : s.velocity.u_values()) umax = std::max(umax, std::abs(x));
    for (double x : s.velocity.v_values()) umax = std::max(umax, std::abs(x));
    const ScalarField lap = laplacian_neumann(s.concentration);
    double lmax = 0.0;
    for (double x : lap.values()) lmax = std::max(lmax, std::abs(x));
    const double h = s.concentration.grid().hmin();
    const double stiff = p.delta_hat * lmax;
    if (umax == 0.0 && stiff == 0.0) return kUnboundedDt;
    const double adv = umax > 0.0 ? h / (umax + eps) : kUnboundedDt;
    const double kor = stiff > 0.0 ? h * h / (stiff + eps) : kUnboundedDt;
    return std::min(kUnboundedDt, cfl_constant * std::min(adv, kor));
}

Projection project(const FaceVectorField& w, const CosinePlan& plan) {
    const ScalarField div = divergence_faces_to_cc(w);
    PoissonSolution sol = solve_poisson_neumann(div, plan);
    const FaceVectorField grad = gradient_cc_to_faces(sol.phi);
    Projection out{w, std::move(sol.phi)};
    auto u = out.velocity.u_values();
    auto gu = grad.u_values();
    for (std::size_t k = 0; k < u.size(); ++k) u[k] -= gu[k];
    auto v = out.velocity.v_values();
    auto gv = grad.v_values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= gv[k];
    out.velocity.enforce_no_penetration();
    return out;
}

Stepper::Stepper(const Grid& g, Params params, ScalarField reaction, const SourceTerms& sources,
                 StepOptions opts)
    : plan_(g), params_(params), reaction_(std::move(reaction)), sources_(&sources), opts_(opts) {
    validate(params_);
    if (!(reaction_.grid() == g)) throw Error(ErrorCode::InvalidArgument, "reaction field grid mismatch");
    for (double x : reaction_.values())
        if (!(x >= 0.0) || !std::isfinite(x))
            throw Error(ErrorCode::ConstraintViolation, "reaction rate g must be finite and >= 0");
}

State Stepper::step(const State& s, double dt, StepStats* stats) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
    if (!opts_.cfl_override) {
        const double dt_max = max_stable_dt(s, params_, opts_.cfl_constant);
        if (dt > dt_max) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "dt " << dt << " exceeds stability bound " << dt_max << " at t = " << s.t;
            throw Error(ErrorCode::CflViolation, msg.str());
        }
    }
    const Grid& g = grid();

    // Concentration: explicit advection, implicit reaction then diffusion.
    ScalarField rhs = s.concentration;
    {
        const ScalarField adv = advect_scalar_skew(s.velocity, s.concentration);
        auto r = rhs.values();
        auto a = adv.values();
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= dt * a[k];
        ScalarField src(g);
        if (sources_->scalar_source(s.t, src)) {
            auto sv = src.values();
            for (std::size_t k = 0; k < r.size(); ++k) r[k] += dt * sv[k];
        }
        auto gr = reaction_.values();
        for (std::size_t k = 0; k < r.size(); ++k) r[k] /= 1.0 + dt * gr[k];
    }
    ScalarField c_star = solve_helmholtz_neumann(rhs, dt * params_.d, plan_);

    // Momentum: explicit Korteweg and body force, implicit drag and viscosity.
    const FaceVectorField drag = drag_coefficient(c_star, params_);
    FaceVectorField rhs_u = korteweg_force(c_star, params_.delta_hat);
    {
        FaceVectorField f(g);
        sources_->velocity_source(s.t, f);
        auto ru = rhs_u.u_values();
        auto fu = f.u_values();
        auto uu = s.velocity.u_values();
        for (std::size_t k = 0; k < ru.size(); ++k) ru[k] = uu[k] + dt * (ru[k] + fu[k]);
        auto rv = rhs_u.v_values();
        auto fv = f.v_values();
        auto vv = s.velocity.v_values();
        for (std::size_t k = 0; k < rv.size(); ++k) rv[k] = vv[k] + dt * (rv[k] + fv[k]);
        rhs_u.enforce_no_penetration();
    }
    CgResult cg = solve_momentum_helmholtz(rhs_u, drag, dt, dt * params_.mu_e, opts_.cg);

    Projection proj = project(cg.solution, plan_);
    State next{s.t + dt, std::move(proj.velocity), std::move(c_star), std::move(proj.phi)};
    for (double& x : next.p_tilde.values()) x /= dt;
    remove_mean(next.p_tilde);

    if (stats) {
        stats->cg_iterations = cg.iterations;
        stats->cg_residual = cg.relative_residual;
    }
    return next;
}

std::vector<double> schedule_steps(double t0, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
    if (!(t_end >= t0)) throw Error(ErrorCode::InvalidArgument, "t_end must not precede the initial time");
    const double span = t_end - t0;
    const auto full = static_cast<long>(std::floor(span / dt + 1e-9));
    std::vector<double> steps(static_cast<std::size_t>(full), dt);
    const double rest = span - static_cast<double>(full) * dt;
    if (rest > 1e-9 * dt) steps.push_back(rest);
    return steps;
}

namespace {
bool finite_state(const State& s) {
    return s.velocity.all_finite() && s.concentration.all_finite() && s.p_tilde.all_finite();
}
}  // namespace

State run(const Stepper& stepper, const State& initial, const RunSchedule& schedule,
          const RunCallbacks& callbacks) {
    if (schedule.record_every < 1) throw Error(ErrorCode::InvalidArgument, "record_every must be >= 1");
    const std::vector<double> steps = schedule_steps(initial.t, schedule.t_end, schedule.dt);
    State state = initial;
    if (callbacks.on_record) callbacks.on_record(0, state, StepStats{}, 0.0);
    const int n = static_cast<int>(steps.size());
    for (int k = 1; k <= n; ++k) {
        StepStats stats;
        const double dt = steps[static_cast<std::size_t>(k - 1)];
        state = stepper.step(state, dt, &stats);
        if (k == n) state.t = schedule.t_end;
        if (!finite_state(state))
            throw Error(ErrorCode::NonFinite, "non-finite field after step " + std::to_string(k));
        if (callbacks.on_record && (k % schedule.record_every == 0 || k == n))
            callbacks.on_record(k, state, stats, dt);
        if (callbacks.on_snapshot && schedule.snapshot_every > 0 && k % schedule.snapshot_every == 0)
            callbacks.on_snapshot(k, state);
    }
    return state;
}

}  // namespace bksim
