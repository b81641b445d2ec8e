#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "bksim/error.hpp"
#include "bksim/io.hpp"

namespace bksim {

namespace {

std::string snapshot_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06d.bin", step);
    return buf;
}

}  // namespace

RunOutcome run_config(const Config& cfg, const std::filesystem::path& out_dir) {
    const Grid g = grid_of(cfg);
    const Params p = effective_params(cfg);
    Forcing forcing = forcing_of(cfg);
    if (forces_unforced_unreactive(cfg.scenario)) forcing = Forcing{};
    const Stepper stepper(g, p, reaction_field(cfg, g), forcing, step_options(cfg));
    const State initial = init(cfg.scenario, g, stepper.plan());

    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir.string() + "': " + ec.message());
    }

    RunOutcome outcome;
    RunCallbacks cb;
    cb.on_record = [&](int, const State& s, const StepStats& stats, double dt_used) {
        outcome.records.push_back(record(s, p, RecordExtras{dt_used, stats.cg_iterations}));
    };
    if (!out_dir.empty())
        cb.on_snapshot = [&](int step, const State& s) { write_snapshot(out_dir / snapshot_name(step), s); };

    const RunSchedule schedule{cfg.run.dt, cfg.run.t_end, cfg.run.record_every, cfg.run.snapshot_every};
    outcome.final_state = run(stepper, initial, schedule, cb);
    outcome.reports = check_estimates(outcome.records, estimate_config(cfg));

    if (!out_dir.empty()) {
        write_timeseries(out_dir / "timeseries.csv", outcome.records);
        write_snapshot(out_dir / "final.bin", outcome.final_state);
        std::ofstream rep(out_dir / "report.txt", std::ios::binary | std::ios::trunc);
        if (!rep) throw Error(ErrorCode::Io, "cannot write report in '" + out_dir.string() + "'");
        rep << format_reports(outcome.reports);
    }
    return outcome;
}

std::filesystem::path resolve_out_dir(const Config& cfg) {
    const char* env = std::getenv("BKSIM_OUT");
    if (env && *env) return env;
    return cfg.run.out_dir;
}

bool spatial_orders_pass(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) return false;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (!(std::abs(rows[k].order_C - kSpatialOrderC) <= kSpatialOrderCTol)) return false;
        if (!(rows[k].order_U >= kSpatialOrderUMin)) return false;
    }
    return true;
}

bool temporal_orders_pass(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) return false;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (!(std::abs(rows[k].order_C - kTemporalOrder) <= kTemporalOrderTol)) return false;
        if (!(std::abs(rows[k].order_U - kTemporalOrder) <= kTemporalOrderTol)) return false;
    }
    return true;
}

MmsOutcome run_mms(const Config& cfg, int levels, bool temporal) {
    if (levels < 3) throw Error(ErrorCode::InvalidArgument, "mms needs at least 3 levels");
    MmsSetup setup;
    setup.lx = cfg.grid.lx;
    setup.ly = cfg.grid.ly;
    setup.t_final = cfg.mms.t_final;
    setup.step = step_options(cfg);
    ManufacturedCase mc = cfg.scenario.mms;

    MmsOutcome out;
    out.spatial = convergence_study(mc, cfg.params, spatial_levels(cfg.mms.n0, cfg.mms.dt0, levels), setup);
    out.pass = spatial_orders_pass(out.spatial);
    if (temporal) {
        // Time error is measured against a fine-dt run on the finest grid, so the
        // spatial error cancels. The dt family exceeds the explicit stability estimate;
        // the implicit diffusion and viscosity keep it stable, so the check is off.
        const int n = out.spatial.back().n;
        std::vector<double> dts;
        for (const MmsLevel& l : temporal_levels(n, cfg.mms.t_final / 10.0, 3)) dts.push_back(l.dt);
        MmsSetup tsetup = setup;
        tsetup.step.cfl_override = true;
        out.temporal = temporal_study(mc, cfg.params, n, dts, tsetup);
        out.pass = out.pass && temporal_orders_pass(out.temporal);
    }
    return out;
}

}  // namespace bksim
