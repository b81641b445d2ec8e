#include "bksim/bksim.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <utility>

#include "bksim/error.hpp"
#include "bksim/io.hpp"

struct bksim_config {
    bksim::Config cfg;
};

// Heap-only: the stepper keeps a pointer to `forcing`.
struct bksim_sim {
    bksim::Params params;
    bksim::Forcing forcing;
    std::unique_ptr<bksim::Stepper> stepper;
    bksim::State state;
};

namespace {

thread_local std::string last_error;

bksim_status status_of(bksim::ErrorCode code) {
    using bksim::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return BKSIM_ERR_INVALID_ARGUMENT;
        case ErrorCode::SingularPermeability: return BKSIM_ERR_SINGULAR_PERMEABILITY;
        case ErrorCode::NoConvergence: return BKSIM_ERR_NO_CONVERGENCE;
        case ErrorCode::CflViolation: return BKSIM_ERR_CFL_VIOLATION;
        case ErrorCode::NonFinite: return BKSIM_ERR_NON_FINITE;
        case ErrorCode::UnknownKey: return BKSIM_ERR_UNKNOWN_KEY;
        case ErrorCode::TypeMismatch: return BKSIM_ERR_TYPE_MISMATCH;
        case ErrorCode::ConstraintViolation: return BKSIM_ERR_CONSTRAINT_VIOLATION;
        case ErrorCode::MissingKey: return BKSIM_ERR_MISSING_KEY;
        case ErrorCode::MalformedLine: return BKSIM_ERR_MALFORMED_LINE;
        case ErrorCode::BadMagic: return BKSIM_ERR_BAD_MAGIC;
        case ErrorCode::SizeMismatch: return BKSIM_ERR_SIZE_MISMATCH;
        case ErrorCode::NonFinitePayload: return BKSIM_ERR_NON_FINITE_PAYLOAD;
        case ErrorCode::EmptySeries: return BKSIM_ERR_EMPTY_SERIES;
        case ErrorCode::Io: return BKSIM_ERR_IO;
    }
    return BKSIM_ERR_INTERNAL;
}

bksim_status fail(bksim_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

// Runs `body`, translating exceptions into status codes at the boundary.
template <class F>
bksim_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return BKSIM_OK;
    } catch (const bksim::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BKSIM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BKSIM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BKSIM_ERR_INTERNAL, "unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) throw bksim::Error(bksim::ErrorCode::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* bksim_version(void) { return "1.0.0"; }

const char* bksim_status_name(bksim_status status) {
    switch (status) {
        case BKSIM_OK: return "Ok";
        case BKSIM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case BKSIM_ERR_SINGULAR_PERMEABILITY: return "SingularPermeability";
        case BKSIM_ERR_NO_CONVERGENCE: return "NoConvergence";
        case BKSIM_ERR_CFL_VIOLATION: return "CflViolation";
        case BKSIM_ERR_NON_FINITE: return "NonFinite";
        case BKSIM_ERR_UNKNOWN_KEY: return "UnknownKey";
        case BKSIM_ERR_TYPE_MISMATCH: return "TypeMismatch";
        case BKSIM_ERR_CONSTRAINT_VIOLATION: return "ConstraintViolation";
        case BKSIM_ERR_MISSING_KEY: return "MissingKey";
        case BKSIM_ERR_MALFORMED_LINE: return "MalformedLine";
        case BKSIM_ERR_BAD_MAGIC: return "BadMagic";
        case BKSIM_ERR_SIZE_MISMATCH: return "SizeMismatch";
        case BKSIM_ERR_NON_FINITE_PAYLOAD: return "NonFinitePayload";
        case BKSIM_ERR_EMPTY_SERIES: return "EmptySeries";
        case BKSIM_ERR_IO: return "Io";
        case BKSIM_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* bksim_last_error(void) { return last_error.c_str(); }

void bksim_string_free(char* s) { std::free(s); }

bksim_status bksim_config_parse(const char* text, bksim_config** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = nullptr;
        *out = new bksim_config{bksim::parse_config(text)};
    });
}

bksim_status bksim_config_load(const char* path, bksim_config** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = nullptr;
        *out = new bksim_config{bksim::load_config(path)};
    });
}

bksim_status bksim_config_serialize(const bksim_config* cfg, char** out) {
    return guarded([&] {
        require(cfg && out, "null argument");
        *out = dup_string(bksim::serialize_config(cfg->cfg));
    });
}

void bksim_config_free(bksim_config* cfg) { delete cfg; }

bksim_status bksim_default_config(char** out) {
    return guarded([&] {
        require(out, "null argument");
        *out = dup_string(bksim::default_config_text());
    });
}

bksim_status bksim_run(const bksim_config* cfg, const char* out_dir, int* all_pass, char** report) {
    return guarded([&] {
        require(cfg && all_pass, "null argument");
        const std::filesystem::path dir = out_dir ? std::filesystem::path(out_dir) : bksim::resolve_out_dir(cfg->cfg);
        const bksim::RunOutcome o = bksim::run_config(cfg->cfg, dir);
        *all_pass = bksim::all_pass(o.reports) ? 1 : 0;
        if (report) *report = dup_string(bksim::format_reports(o.reports));
    });
}

bksim_status bksim_mms(const bksim_config* cfg, int levels, int temporal, int* all_pass, char** table) {
    return guarded([&] {
        require(cfg && all_pass, "null argument");
        const bksim::MmsOutcome o = bksim::run_mms(cfg->cfg, levels, temporal != 0);
        *all_pass = o.pass ? 1 : 0;
        if (table) {
            std::string text = "# spatial\n" + bksim::convergence_csv(o.spatial);
            if (temporal) text += "# temporal\n" + bksim::convergence_csv(o.temporal);
            *table = dup_string(text);
        }
    });
}

bksim_status bksim_check_timeseries(const char* csv_path, const bksim_config* cfg, int* all_pass, char** report) {
    return guarded([&] {
        require(csv_path && all_pass, "null argument");
        const auto records = bksim::read_timeseries(csv_path);
        bksim::EstimateConfig ec;
        if (cfg) {
            ec = bksim::estimate_config(cfg->cfg);
        } else {
            ec.d = 0.0;
            ec.hmin = 1.0;
        }
        const auto reports = bksim::check_estimates(records, ec);
        *all_pass = bksim::all_pass(reports) ? 1 : 0;
        if (report) *report = dup_string(bksim::format_reports(reports));
    });
}

bksim_status bksim_sim_create(const bksim_config* cfg, bksim_sim** out) {
    return guarded([&] {
        require(cfg && out, "null argument");
        *out = nullptr;
        const bksim::Config& c = cfg->cfg;
        auto sim = std::make_unique<bksim_sim>();
        const bksim::Grid g = bksim::grid_of(c);
        sim->params = bksim::effective_params(c);
        sim->forcing = bksim::forces_unforced_unreactive(c.scenario) ? bksim::Forcing{} : bksim::forcing_of(c);
        sim->stepper = std::make_unique<bksim::Stepper>(g, sim->params, bksim::reaction_field(c, g), sim->forcing,
                                                        bksim::step_options(c));
        sim->state = bksim::init(c.scenario, g, sim->stepper->plan());
        *out = sim.release();
    });
}

void bksim_sim_free(bksim_sim* sim) { delete sim; }

bksim_status bksim_sim_step(bksim_sim* sim, double dt, int* cg_iterations) {
    return guarded([&] {
        require(sim, "null argument");
        bksim::StepStats stats;
        sim->state = sim->stepper->step(sim->state, dt, &stats);
        if (cg_iterations) *cg_iterations = stats.cg_iterations;
    });
}

bksim_status bksim_sim_dims(const bksim_sim* sim, int* nx, int* ny) {
    return guarded([&] {
        require(sim && nx && ny, "null argument");
        *nx = sim->stepper->grid().nx;
        *ny = sim->stepper->grid().ny;
    });
}

bksim_status bksim_sim_time(const bksim_sim* sim, double* t) {
    return guarded([&] {
        require(sim && t, "null argument");
        *t = sim->state.t;
    });
}

bksim_status bksim_sim_max_stable_dt(const bksim_sim* sim, double* dt) {
    return guarded([&] {
        require(sim && dt, "null argument");
        *dt = bksim::max_stable_dt(sim->state, sim->params, sim->stepper->options().cfl_constant);
    });
}

bksim_status bksim_sim_copy_field(const bksim_sim* sim, bksim_field field, double* buf, size_t* len) {
    return guarded([&] {
        require(sim && len, "null argument");
        const bksim::State& s = sim->state;
        bksim::ScalarField pressure;
        std::span<const double> src;
        switch (field) {
            case BKSIM_FIELD_C: src = s.concentration.values(); break;
            case BKSIM_FIELD_U: src = s.velocity.u_values(); break;
            case BKSIM_FIELD_V: src = s.velocity.v_values(); break;
            case BKSIM_FIELD_P_TILDE: src = s.p_tilde.values(); break;
            case BKSIM_FIELD_PRESSURE:
                pressure = bksim::physical_pressure(s.p_tilde, s.concentration, sim->params);
                src = std::as_const(pressure).values();
                break;
            default: require(false, "unknown field");
        }
        const size_t cap = *len;
        *len = src.size();
        if (cap < src.size())
            throw bksim::Error(bksim::ErrorCode::SizeMismatch,
                               "buffer holds " + std::to_string(cap) + " values, field has " +
                                   std::to_string(src.size()));
        require(buf != nullptr, "null buffer");
        if (!src.empty()) std::memcpy(buf, src.data(), src.size() * sizeof(double));
    });
}

bksim_status bksim_sim_write_snapshot(const bksim_sim* sim, const char* path) {
    return guarded([&] {
        require(sim && path, "null argument");
        bksim::write_snapshot(path, sim->state);
    });
}

bksim_status bksim_sim_read_snapshot(bksim_sim* sim, const char* path) {
    return guarded([&] {
        require(sim && path, "null argument");
        bksim::State s = bksim::read_snapshot(path);
        const bksim::Grid& g = sim->stepper->grid();
        if (s.concentration.grid().nx != g.nx || s.concentration.grid().ny != g.ny)
            throw bksim::Error(bksim::ErrorCode::SizeMismatch, std::string("snapshot grid differs from simulation grid: ") +
                                                                  path);
        sim->state = std::move(s);
    });
}

}  // extern "C"
