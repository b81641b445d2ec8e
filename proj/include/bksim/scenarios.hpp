#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bksim/grid.hpp"
#include "bksim/mms.hpp"
#include "bksim/operators.hpp"
#include "bksim/poisson.hpp"
#include "bksim/timestepper.hpp"

namespace bksim {

/// splitmix64 stream mapped to [-1, 1); bit-exact on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next();

private:
    std::uint64_t state_;
};

enum class ScenarioId { Uniform, DisplacementStripe, MmsSlice, CorollaryDecay, DarcyLimit, StokesLimit };

const char* to_string(ScenarioId id);
ScenarioId scenario_from_string(const std::string& name);

struct Scenario {
    ScenarioId id = ScenarioId::Uniform;
    double c0 = 0.0;        ///< uniform level
    std::optional<double> x0;     ///< interface position; unset selects lx/4
    std::optional<double> width;  ///< interface thickness; unset selects 4 h
    double a_pert = 0.0;    ///< interface perturbation amplitude
    double u0_amp = 1.0;    ///< initial vortex speed for the decay and limit presets
    ManufacturedCase mms;   ///< used by MmsSlice
    std::uint64_t seed = 0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Preset parameter changes: corollary_decay sets beta = 0, darcy_limit scales
/// mu_e by 1e-4, stokes_limit sets beta = 0 and scales alpha by 1e-4.
Params apply_overrides(const Scenario& scn, Params p);

/// True when the preset also forces f = 0 and g = 0 (the decay regime).
bool forces_unforced_unreactive(const Scenario& scn);

/// Initial state: C0 in [0,1] (except mms_slice), projected U0, zero pressure.
/// Throws Error(InvalidArgument) for width <= 0 or x0 outside [0, lx].
State init(const Scenario& scn, const Grid& g, const CosinePlan& plan);

}  // namespace bksim
