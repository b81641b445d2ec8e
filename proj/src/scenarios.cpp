#include "bksim/scenarios.hpp"

#include <cmath>

#include "bksim/error.hpp"

namespace bksim {

std::uint64_t RngStream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::next() {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

const char* to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::Uniform: return "uniform";
        case ScenarioId::DisplacementStripe: return "displacement_stripe";
        case ScenarioId::MmsSlice: return "mms_slice";
        case ScenarioId::CorollaryDecay: return "corollary_decay";
        case ScenarioId::DarcyLimit: return "darcy_limit";
        case ScenarioId::StokesLimit: return "stokes_limit";
    }
    return "unknown";
}

ScenarioId scenario_from_string(const std::string& name) {
    for (ScenarioId id : {ScenarioId::Uniform, ScenarioId::DisplacementStripe, ScenarioId::MmsSlice,
                          ScenarioId::CorollaryDecay, ScenarioId::DarcyLimit, ScenarioId::StokesLimit})
        if (name == to_string(id)) return id;
    throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + name + "'");
}

Params apply_overrides(const Scenario& scn, Params p) {
    switch (scn.id) {
        case ScenarioId::CorollaryDecay:
            p.beta = 0.0;
            break;
        case ScenarioId::DarcyLimit:
            p.mu_e *= 1e-4;
            break;
        case ScenarioId::StokesLimit:
            p.beta = 0.0;
            p.alpha *= 1e-4;
            break;
        default:
            break;
    }
    return p;
}

bool forces_unforced_unreactive(const Scenario& scn) { return scn.id == ScenarioId::CorollaryDecay; }

namespace {

ScalarField stripe(const Scenario& scn, const Grid& g) {
    const double x0 = scn.x0.value_or(0.25 * g.lx);
    const double w = scn.width.value_or(4.0 * g.hx);
    RngStream rng(scn.seed);
    std::vector<double> eta(static_cast<std::size_t>(g.ny));
    for (double& e : eta) e = rng.next();
    ScalarField c(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double shift = scn.a_pert * eta[static_cast<std::size_t>(j)];
            c(i, j) = 0.5 * (1.0 - std::tanh((g.xc(i) - x0 - shift) / w));
        }
    return c;
}

void validate(const Scenario& scn, const Grid& g) {
    if (scn.width && !(*scn.width > 0.0))
        throw Error(ErrorCode::InvalidArgument, "scenario width must be > 0");
    if (scn.x0 && !(*scn.x0 >= 0.0 && *scn.x0 <= g.lx))
        throw Error(ErrorCode::InvalidArgument, "scenario x0 must lie in [0, lx]");
    if (!(scn.c0 >= 0.0 && scn.c0 <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "scenario c0 must lie in [0, 1]");
    if (!std::isfinite(scn.a_pert) || !std::isfinite(scn.u0_amp))
        throw Error(ErrorCode::InvalidArgument, "scenario amplitudes must be finite");
}

}  // namespace

State init(const Scenario& scn, const Grid& g, const CosinePlan& plan) {
    validate(scn, g);
    State s = make_state(g);
    switch (scn.id) {
        case ScenarioId::Uniform:
            s.concentration = ScalarField(g, scn.c0);
            break;
        case ScenarioId::DisplacementStripe:
            s.concentration = stripe(scn, g);
            break;
        case ScenarioId::MmsSlice:
            s = manufactured_state(scn.mms, g, 0.0);
            break;
        case ScenarioId::CorollaryDecay:
        case ScenarioId::DarcyLimit:
        case ScenarioId::StokesLimit:
            s.concentration = stripe(scn, g);
            s.velocity = vortex_field(g, scn.u0_amp);
            break;
    }
    s.velocity = project(s.velocity, plan).velocity;
    return s;
}

}  // namespace bksim
