#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "bksim/error.hpp"
#include "bksim/io.hpp"

namespace bksim {

namespace {

// Shortest text that reads back to the same double.
std::string format_double(double x) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Field {
    std::string key;
    int line;
    std::string text;
};

[[noreturn]] void mismatch(const Field& f, const char* expected) {
    throw Error(ErrorCode::TypeMismatch, f.key + ": expected " + expected + ", got '" + f.text +
                                             "' (line " + std::to_string(f.line) + ")");
}

[[noreturn]] void violation(const std::string& key, const std::string& rule, int line) {
    std::string msg = key + ": " + rule;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw Error(ErrorCode::ConstraintViolation, msg);
}

double as_double(const Field& f) {
    double x = 0.0;
    const char* b = f.text.data();
    const char* e = b + f.text.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e || !std::isfinite(x)) mismatch(f, "finite float");
    return x;
}

long long as_int(const Field& f) {
    long long x = 0;
    const char* b = f.text.data();
    const char* e = b + f.text.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e) mismatch(f, "integer");
    return x;
}

std::uint64_t as_u64(const Field& f) {
    std::uint64_t x = 0;
    const char* b = f.text.data();
    const char* e = b + f.text.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e) mismatch(f, "unsigned 64-bit integer");
    return x;
}

bool as_bool(const Field& f) {
    if (f.text == "true") return true;
    if (f.text == "false") return false;
    mismatch(f, "true or false");
}

using Check = std::function<std::optional<std::string>(double)>;

Check positive() {
    return [](double x) -> std::optional<std::string> {
        if (x > 0.0) return std::nullopt;
        return "must be > 0";
    };
}
Check non_negative() {
    return [](double x) -> std::optional<std::string> {
        if (x >= 0.0) return std::nullopt;
        return "must be >= 0";
    };
}
Check unit_interval() {
    return [](double x) -> std::optional<std::string> {
        if (x >= 0.0 && x <= 1.0) return std::nullopt;
        return "must lie in [0, 1]";
    };
}
Check below_one() {
    return [](double x) -> std::optional<std::string> {
        if (std::abs(x) < 1.0) return std::nullopt;
        return "must satisfy |B| < 1";
    };
}

struct KeyDef {
    std::string key;
    std::string doc;
    bool required = false;
    std::function<void(Config&, const Field&)> set;
    // nullopt when the key is unset (optional values without a default).
    std::function<std::optional<std::string>(const Config&)> get;
};

template <class Member>
KeyDef real_key(std::string key, std::string doc, bool required, Member member, Check check = {}) {
    KeyDef k;
    k.key = std::move(key);
    k.doc = std::move(doc);
    k.required = required;
    k.set = [member, check](Config& c, const Field& f) {
        const double x = as_double(f);
        if (check)
            if (auto rule = check(x)) violation(f.key, *rule, f.line);
        member(c) = x;
    };
    k.get = [member](const Config& c) -> std::optional<std::string> {
        return format_double(member(c));
    };
    return k;
}

template <class Member>
KeyDef optional_real_key(std::string key, std::string doc, Member member, Check check) {
    KeyDef k;
    k.key = std::move(key);
    k.doc = std::move(doc);
    k.set = [member, check](Config& c, const Field& f) {
        const double x = as_double(f);
        if (auto rule = check(x)) violation(f.key, *rule, f.line);
        member(c) = x;
    };
    k.get = [member](const Config& c) -> std::optional<std::string> {
        const std::optional<double>& v = member(c);
        if (!v) return std::nullopt;
        return format_double(*v);
    };
    return k;
}

template <class Member>
KeyDef int_key(std::string key, std::string doc, bool required, Member member, long long lo) {
    KeyDef k;
    k.key = std::move(key);
    k.doc = std::move(doc);
    k.required = required;
    k.set = [member, lo](Config& c, const Field& f) {
        const long long x = as_int(f);
        if (x < lo) violation(f.key, "must be >= " + std::to_string(lo), f.line);
        if (x > 1'000'000'000LL) violation(f.key, "must be <= 1000000000", f.line);
        member(c) = static_cast<int>(x);
    };
    k.get = [member](const Config& c) -> std::optional<std::string> {
        return std::to_string(member(c));
    };
    return k;
}

template <class Member>
KeyDef bool_key(std::string key, std::string doc, Member member) {
    KeyDef k;
    k.key = std::move(key);
    k.doc = std::move(doc);
    k.set = [member](Config& c, const Field& f) { member(c) = as_bool(f); };
    k.get = [member](const Config& c) -> std::optional<std::string> {
        return member(c) ? "true" : "false";
    };
    return k;
}

template <class Enum, class Member>
KeyDef enum_key(std::string key, std::string doc, bool required, Member member,
                 std::vector<std::pair<std::string, Enum>> names) {
    KeyDef k;
    k.key = std::move(key);
    k.doc = std::move(doc);
    k.required = required;
    k.set = [member, names](Config& c, const Field& f) {
        for (const auto& [name, value] : names)
            if (f.text == name) {
                member(c) = value;
                return;
            }
        std::string expected = "one of";
        for (const auto& [name, value] : names) expected += " " + name;
        mismatch(f, expected.c_str());
    };
    k.get = [member, names](const Config& c) -> std::optional<std::string> {
        const Enum v = member(c);
        for (const auto& [name, value] : names)
            if (value == v) return name;
        return std::nullopt;
    };
    return k;
}

#define MEMBER(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<KeyDef>& key_table() {
    static const std::vector<KeyDef> table = [] {
        std::vector<KeyDef> t;
        t.push_back(int_key("grid.nx", "cells in x", true, MEMBER(grid.nx), 4));
        t.push_back(int_key("grid.ny", "cells in y", true, MEMBER(grid.ny), 4));
        t.push_back(real_key("grid.lx", "domain length in x", true, MEMBER(grid.lx), positive()));
        t.push_back(real_key("grid.ly", "domain length in y", true, MEMBER(grid.ly), positive()));
        t.push_back(real_key("params.mu", "viscosity (drag term)", true, MEMBER(params.mu), positive()));
        t.push_back(real_key("params.mu_e", "effective viscosity", true, MEMBER(params.mu_e), positive()));
        t.push_back(real_key("params.d", "solute diffusivity", true, MEMBER(params.d), positive()));
        t.push_back(real_key("params.alpha", "permeability law K = 1/(alpha + beta C)", true, MEMBER(params.alpha), positive()));
        t.push_back(real_key("params.beta", "permeability law slope", true, MEMBER(params.beta), non_negative()));
        t.push_back(real_key("params.delta_hat", "Korteweg gradient coefficient", true, MEMBER(params.delta_hat), positive()));
        t.push_back(real_key("params.gamma", "Korteweg Laplacian coefficient (pressure recovery only)", true, MEMBER(params.gamma), positive()));
        t.push_back(enum_key<ReactionKind>("reaction.g_kind", "reaction rate: zero | constant | analytic_preset (g_value (1 + cos cos)/2)", false,
                                           MEMBER(reaction.kind),
                                           {{"zero", ReactionKind::Zero}, {"constant", ReactionKind::Constant},
                                            {"analytic_preset", ReactionKind::AnalyticPreset}}));
        t.push_back(real_key("reaction.g_value", "reaction rate amplitude", false, MEMBER(reaction.value), non_negative()));
        t.push_back(enum_key<ForcingKind>("forcing.kind", "body force: zero | constant_vector | vortex", false, MEMBER(forcing.kind),
                                          {{"zero", ForcingKind::Zero}, {"constant_vector", ForcingKind::ConstantVector},
                                           {"vortex", ForcingKind::Vortex}}));
        t.push_back(real_key("forcing.fx", "constant_vector x component", false, MEMBER(forcing.fx)));
        t.push_back(real_key("forcing.fy", "constant_vector y component", false, MEMBER(forcing.fy)));
        t.push_back(real_key("forcing.amplitude", "vortex peak magnitude", false, MEMBER(forcing.amplitude)));
        t.push_back(enum_key<ScenarioId>("scenario.id", "uniform | displacement_stripe | mms_slice | corollary_decay | darcy_limit | stokes_limit", true,
                                         MEMBER(scenario.id),
                                         {{"uniform", ScenarioId::Uniform},
                                          {"displacement_stripe", ScenarioId::DisplacementStripe},
                                          {"mms_slice", ScenarioId::MmsSlice},
                                          {"corollary_decay", ScenarioId::CorollaryDecay},
                                          {"darcy_limit", ScenarioId::DarcyLimit},
                                          {"stokes_limit", ScenarioId::StokesLimit}}));
        t.push_back(real_key("scenario.c0", "uniform concentration", false, MEMBER(scenario.c0), unit_interval()));
        t.push_back(optional_real_key("scenario.x0", "interface position (default lx/4)", MEMBER(scenario.x0), non_negative()));
        t.push_back(optional_real_key("scenario.width", "interface thickness (default 4 hx)", MEMBER(scenario.width), positive()));
        t.push_back(real_key("scenario.a_pert", "interface perturbation amplitude", false, MEMBER(scenario.a_pert)));
        t.push_back(real_key("scenario.u0_amp", "initial vortex speed (decay and limit presets)", false, MEMBER(scenario.u0_amp)));
        t.push_back(real_key("run.dt", "time step", false, MEMBER(run.dt), positive()));
        t.push_back(real_key("run.t_end", "final time", false, MEMBER(run.t_end), non_negative()));
        t.push_back(int_key("run.record_every", "steps between diagnostics records", false, MEMBER(run.record_every), 1));
        t.push_back(int_key("run.snapshot_every", "steps between snapshots (0 = final only)", false, MEMBER(run.snapshot_every), 0));
        t.push_back(bool_key("run.cfl_override", "skip the stability check", MEMBER(run.cfl_override)));
        t.push_back(real_key("run.cfl_constant", "stability safety factor", false, MEMBER(run.cfl_constant), positive()));
        {
            KeyDef k;
            k.key = "run.out_dir";
            k.doc = "output directory (BKSIM_OUT overrides)";
            k.set = [](Config& c, const Field& f) {
                if (f.text.empty()) violation(f.key, "must not be empty", f.line);
                c.run.out_dir = f.text;
            };
            k.get = [](const Config& c) -> std::optional<std::string> { return c.run.out_dir; };
            t.push_back(k);
        }
        t.push_back(real_key("solver.tol", "momentum CG relative tolerance", false, MEMBER(solver.tol), positive()));
        t.push_back(int_key("solver.max_iter", "momentum CG iteration cap (0 = 10 nx ny)", false, MEMBER(solver.max_iter), 0));
        t.push_back(bool_key("solver.precondition", "Jacobi preconditioning", MEMBER(solver.precondition)));
        t.push_back(real_key("check.slack_tol", "relative slack for the energy ledgers", false, MEMBER(check.slack_tol), positive()));
        t.push_back(real_key("check.div_tol", "divergence bound factor", false, MEMBER(check.div_tol), positive()));
        t.push_back(real_key("check.pressure_mean_tol", "bound on |mean(p_tilde)|", false, MEMBER(check.pressure_mean_tol), positive()));
        t.push_back(int_key("mms.n0", "coarsest manufactured-solution grid", false, MEMBER(mms.n0), 4));
        t.push_back(real_key("mms.dt0", "time step on the coarsest grid", false, MEMBER(mms.dt0), positive()));
        t.push_back(real_key("mms.t_final", "manufactured-solution end time", false, MEMBER(mms.t_final), positive()));
        t.push_back(real_key("mms.A", "streamfunction amplitude", false, MEMBER(scenario.mms.A)));
        t.push_back(real_key("mms.B", "concentration amplitude", false, MEMBER(scenario.mms.B), below_one()));
        t.push_back(real_key("mms.omega", "velocity angular frequency", false, MEMBER(scenario.mms.omega)));
        t.push_back(real_key("mms.sigma", "concentration decay rate", false, MEMBER(scenario.mms.sigma)));
        {
            KeyDef k;
            k.key = "seed";
            k.doc = "seed of the interface perturbation";
            k.set = [](Config& c, const Field& f) { c.seed = as_u64(f); };
            k.get = [](const Config& c) -> std::optional<std::string> { return std::to_string(c.seed); };
            t.push_back(k);
        }
        return t;
    }();
    return table;
}

#undef MEMBER

Config default_config() {
    Config c;
    c.scenario.mms.g = 0.0;
    return c;
}

}  // namespace

Config parse_config(const std::string& text) {
    const auto& table = key_table();
    std::map<std::string, const KeyDef*> by_name;
    for (const auto& k : table) by_name[k.key] = &k;

    Config cfg = default_config();
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::MalformedLine, "expected 'key = value' (line " + std::to_string(line) + ")");
        Field f{trim(s.substr(0, eq)), line, trim(s.substr(eq + 1))};
        const auto it = by_name.find(f.key);
        if (it == by_name.end())
            throw Error(ErrorCode::UnknownKey, "unknown key '" + f.key + "' (line " + std::to_string(line) + ")");
        if (const auto prev = seen.find(f.key); prev != seen.end())
            throw Error(ErrorCode::MalformedLine, "duplicate key '" + f.key + "' (line " + std::to_string(line) +
                                                      ", first at line " + std::to_string(prev->second) + ")");
        seen[f.key] = line;
        it->second->set(cfg, f);
    }
    for (const auto& k : table)
        if (k.required && !seen.count(k.key)) throw Error(ErrorCode::MissingKey, "missing required key '" + k.key + "'");

    auto line_of = [&](const char* key) {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    if (cfg.scenario.x0 && *cfg.scenario.x0 > cfg.grid.lx)
        violation("scenario.x0", "must lie in [0, grid.lx]", line_of("scenario.x0"));
    if (forces_unforced_unreactive(cfg.scenario) && !forcing_of(cfg).is_zero())
        violation("forcing.kind", "corollary_decay requires zero forcing", line_of("forcing.kind"));
    if (forces_unforced_unreactive(cfg.scenario) && cfg.reaction.kind != ReactionKind::Zero && cfg.reaction.value != 0.0)
        violation("reaction.g_kind", "corollary_decay requires zero reaction", line_of("reaction.g_kind"));
    cfg.scenario.mms.g = cfg.reaction.kind == ReactionKind::Zero ? 0.0 : cfg.reaction.value;
    cfg.scenario.seed = cfg.seed;
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const Config& cfg) {
    std::string out;
    for (const auto& k : key_table())
        if (auto v = k.get(cfg)) out += k.key + " = " + *v + "\n";
    return out;
}

std::string default_config_text() {
    const Config cfg = default_config();
    std::string out = "# bksim configuration keys and defaults\n# required keys are listed commented out\n";
    for (const auto& k : key_table()) {
        out += "\n# " + k.doc + "\n";
        if (k.required) {
            out += "# " + k.key + " = <required>\n";
        } else if (auto v = k.get(cfg)) {
            out += k.key + " = " + *v + "\n";
        } else {
            out += "# " + k.key + " = <unset>\n";
        }
    }
    return out;
}

Grid grid_of(const Config& cfg) { return make_grid(cfg.grid.nx, cfg.grid.ny, cfg.grid.lx, cfg.grid.ly); }

Params effective_params(const Config& cfg) { return apply_overrides(cfg.scenario, cfg.params); }

ScalarField reaction_field(const Config& cfg, const Grid& g) {
    if (forces_unforced_unreactive(cfg.scenario)) return ScalarField(g);
    switch (cfg.reaction.kind) {
        case ReactionKind::Zero:
            return ScalarField(g);
        case ReactionKind::Constant:
            return ScalarField(g, cfg.reaction.value);
        case ReactionKind::AnalyticPreset: {
            ScalarField r(g);
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j)
                    r(i, j) = cfg.reaction.value * 0.5 *
                              (1.0 + std::cos(std::numbers::pi * g.xc(i) / g.lx) * std::cos(std::numbers::pi * g.yc(j) / g.ly));
            return r;
        }
    }
    return ScalarField(g);
}

Forcing forcing_of(const Config& cfg) {
    Forcing f;
    f.kind = cfg.forcing.kind;
    f.fx = cfg.forcing.fx;
    f.fy = cfg.forcing.fy;
    f.amplitude = cfg.forcing.amplitude;
    return f;
}

StepOptions step_options(const Config& cfg) {
    StepOptions o;
    o.cg.tol = cfg.solver.tol;
    o.cg.max_iter = cfg.solver.max_iter;
    o.cg.jacobi = cfg.solver.precondition;
    o.cfl_override = cfg.run.cfl_override;
    o.cfl_constant = cfg.run.cfl_constant;
    return o;
}

EstimateConfig estimate_config(const Config& cfg) {
    const Params p = effective_params(cfg);
    const Grid g = grid_of(cfg);
    EstimateConfig e;
    e.d = p.d;
    e.hmin = g.hmin();
    e.slack_tol = cfg.check.slack_tol;
    e.div_tol = cfg.check.div_tol;
    e.pressure_mean_tol = cfg.check.pressure_mean_tol;
    bool reaction_zero = true;
    const ScalarField reaction = reaction_field(cfg, g);
    for (double x : reaction.values()) reaction_zero = reaction_zero && x == 0.0;
    e.decay_regime = p.beta == 0.0 && forcing_of(cfg).is_zero() && reaction_zero;
    return e;
}

}  // namespace bksim
