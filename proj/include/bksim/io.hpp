#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bksim/diagnostics.hpp"
#include "bksim/grid.hpp"
#include "bksim/mms.hpp"
#include "bksim/operators.hpp"
#include "bksim/scenarios.hpp"
#include "bksim/timestepper.hpp"

namespace bksim {

enum class ReactionKind { Zero, Constant, AnalyticPreset };

/// Flat `section.key = value` configuration.
struct Config {
    struct GridBlock {
        int nx = 0;
        int ny = 0;
        double lx = 0.0;
        double ly = 0.0;
        friend bool operator==(const GridBlock&, const GridBlock&) = default;
    } grid;
    Params params;
    struct Reaction {
        ReactionKind kind = ReactionKind::Zero;
        double value = 0.0;
        friend bool operator==(const Reaction&, const Reaction&) = default;
    } reaction;
    struct ForcingBlock {
        ForcingKind kind = ForcingKind::Zero;
        double fx = 0.0;
        double fy = 0.0;
        double amplitude = 0.0;
        friend bool operator==(const ForcingBlock&, const ForcingBlock&) = default;
    } forcing;
    Scenario scenario;
    struct Run {
        double dt = 1e-3;
        double t_end = 0.1;
        int record_every = 1;
        int snapshot_every = 0;
        bool cfl_override = false;
        double cfl_constant = 0.4;
        std::string out_dir = "out";
        friend bool operator==(const Run&, const Run&) = default;
    } run;
    struct Solver {
        double tol = 1e-10;
        int max_iter = 0;
        bool precondition = false;
        friend bool operator==(const Solver&, const Solver&) = default;
    } solver;
    struct Check {
        double slack_tol = 1e-6;
        double div_tol = 1e-10;
        double pressure_mean_tol = 1e-13;
        friend bool operator==(const Check&, const Check&) = default;
    } check;
    struct Mms {
        int n0 = 32;
        double dt0 = 3.125e-3;
        double t_final = 0.1;
        friend bool operator==(const Mms&, const Mms&) = default;
    } mms;
    std::uint64_t seed = 0;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Parses and validates configuration text. Required keys: grid.nx, grid.ny,
/// grid.lx, grid.ly, every params.* key and scenario.id; the rest defaults.
/// Errors: UnknownKey, TypeMismatch, ConstraintViolation, MissingKey,
/// MalformedLine, each message carrying the key and line number.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

/// Text that parses back to an identical Config (shortest round-trip doubles).
std::string serialize_config(const Config& cfg);

/// Annotated dump of every key with its default value.
std::string default_config_text();

Grid grid_of(const Config& cfg);
/// Params after scenario overrides.
Params effective_params(const Config& cfg);
ScalarField reaction_field(const Config& cfg, const Grid& g);
Forcing forcing_of(const Config& cfg);
StepOptions step_options(const Config& cfg);
EstimateConfig estimate_config(const Config& cfg);

inline constexpr const char* kTimeseriesHeader =
    "t,l2_C,h1s_C,l2_U,h1s_U,energy,mass,div_residual,dt,cg_iters";

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records);
void write_timeseries(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> parse_timeseries(const std::string& text);
std::vector<DiagnosticsRecord> read_timeseries(const std::filesystem::path& path);

/// `BKSIM1 nx ny lx ly t\n` followed by little-endian float64 blocks C, u, v, p_tilde.
std::string snapshot_bytes(const State& s);
State parse_snapshot(const std::string& bytes);
void write_snapshot(const std::filesystem::path& path, const State& s);
/// Errors: BadMagic, SizeMismatch, NonFinitePayload, Io.
State read_snapshot(const std::filesystem::path& path);

/// p = p_tilde + Q(C) - (delta_hat/2)|grad C|^2, shifted to zero mean.
ScalarField physical_pressure(const ScalarField& p_tilde, const ScalarField& c, const Params& p);

struct RunOutcome {
    std::vector<DiagnosticsRecord> records;
    std::vector<EstimateReport> reports;
    State final_state;
};

/// Executes a configured simulation. When `out_dir` is non-empty, writes
/// timeseries.csv, snap_NNNNNN.bin (every snapshot_every steps), final.bin and
/// report.txt there.
RunOutcome run_config(const Config& cfg, const std::filesystem::path& out_dir);

/// BKSIM_OUT from the environment when set and non-empty, else run.out_dir.
std::filesystem::path resolve_out_dir(const Config& cfg);

struct MmsOutcome {
    std::vector<ConvergenceRow> spatial;
    std::vector<ConvergenceRow> temporal;  ///< empty unless requested
    bool pass = false;
};

/// Orders required of a manufactured-solution study.
inline constexpr double kSpatialOrderC = 2.0;
inline constexpr double kSpatialOrderCTol = 0.3;
inline constexpr double kSpatialOrderUMin = 1.5;
inline constexpr double kTemporalOrder = 1.0;
inline constexpr double kTemporalOrderTol = 0.3;

/// `levels` spatial levels from mms.n0 / mms.dt0; optionally a temporal study
/// at the finest n with dt in {T/10, T/20, T/40}, T = mms.t_final, measured
/// against a reference run at dt / 16.
MmsOutcome run_mms(const Config& cfg, int levels, bool temporal);

bool spatial_orders_pass(const std::vector<ConvergenceRow>& rows);
bool temporal_orders_pass(const std::vector<ConvergenceRow>& rows);

}  // namespace bksim
