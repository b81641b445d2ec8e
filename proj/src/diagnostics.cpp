#include "bksim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bksim/error.hpp"

namespace bksim {

double l2_norm_cc(const ScalarField& c) { return std::sqrt(dot(c, c)); }

double l2_norm_faces(const FaceVectorField& w) { return std::sqrt(dot(w, w)); }

double h1_seminorm_cc(const ScalarField& c) { return l2_norm_faces(gradient_cc_to_faces(c)); }

double h1_seminorm_faces(const FaceVectorField& w) {
    const double e = -dot(laplacian_dirichlet_velocity(w), w);
    return std::sqrt(std::max(0.0, e));  // also maps -0 to +0
}

double divergence_residual(const FaceVectorField& w) {
    const ScalarField div = divergence_faces_to_cc(w);
    double m = 0.0;
    for (double x : div.values()) m = std::max(m, std::abs(x));
    return m;
}

DiagnosticsRecord record(const State& s, const Params& p, const RecordExtras& extras) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.l2_C = l2_norm_cc(s.concentration);
    r.h1s_C = h1_seminorm_cc(s.concentration);
    r.l2_U = l2_norm_faces(s.velocity);
    r.h1s_U = h1_seminorm_faces(s.velocity);
    r.energy = 0.5 * (r.l2_U * r.l2_U + p.delta_hat * r.h1s_C * r.h1s_C);
    double sum = 0.0;
    for (double x : s.concentration.values()) sum += x;
    r.mass = sum * s.concentration.grid().cell_volume();
    r.div_residual = divergence_residual(s.velocity);
    r.dt = extras.dt_used;
    r.cg_iters = extras.cg_iters;
    r.p_mean = mean(s.p_tilde);
    return r;
}

const char* to_string(EstimateId id) {
    switch (id) {
        case EstimateId::ConcentrationMonotone: return "concentration_monotone";
        case EstimateId::ConcentrationLedger: return "concentration_ledger";
        case EstimateId::CorollaryDecay: return "corollary_decay";
        case EstimateId::Divergence: return "divergence";
        case EstimateId::PressureMean: return "pressure_mean";
    }
    return "unknown";
}

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

// Keeps the first index attaining the largest violation.
struct Worst {
    double value = 0.0;
    int where = -1;
    void offer(double v, int k) {
        if (v > value || (where < 0 && v == value && v > 0.0)) {
            value = v;
            where = k;
        }
    }
};

EstimateReport finish(EstimateId id, const Worst& w, double tol) {
    EstimateReport r;
    r.id = id;
    r.worst_violation = w.value;
    r.where = w.where;
    r.tolerance = tol;
    r.pass = w.value <= tol;
    return r;
}

}  // namespace

double ledger_step_excess(const std::vector<DiagnosticsRecord>& series, double d) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "empty diagnostics series");
    const double c0 = series.front().l2_C * series.front().l2_C;
    double worst = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double prev = series[k - 1].l2_C * series[k - 1].l2_C;
        const double dt = series[k].t - series[k - 1].t;
        const double now = series[k].l2_C * series[k].l2_C + 2.0 * d * dt * series[k].h1s_C * series[k].h1s_C;
        worst = std::max(worst, (now - prev) / std::max(c0, kTiny));
    }
    return worst;
}

double energy_step_excess(const std::vector<DiagnosticsRecord>& series) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "empty diagnostics series");
    const double e0 = series.front().energy;
    double worst = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k)
        worst = std::max(worst, (series[k].energy - series[k - 1].energy) / std::max(e0, kTiny));
    return worst;
}

std::optional<double> observed_order(const std::vector<double>& dts, const std::vector<double>& excess,
                                     double floor) {
    if (dts.size() != excess.size() || dts.size() < 2) return std::nullopt;
    std::optional<double> order;
    for (std::size_t k = 1; k < dts.size(); ++k) {
        if (!(excess[k - 1] > floor) || !(excess[k] > floor)) return std::nullopt;
        const double p = std::log(excess[k - 1] / excess[k]) / std::log(dts[k - 1] / dts[k]);
        order = order ? std::min(*order, p) : p;
    }
    return order;
}

std::vector<EstimateReport> check_estimates(const std::vector<DiagnosticsRecord>& series,
                                            const EstimateConfig& cfg,
                                            const std::vector<RefinementRun>& refinement) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "empty diagnostics series");
    std::vector<EstimateReport> out;

    {
        Worst w;
        for (std::size_t k = 1; k < series.size(); ++k) {
            const double prev = series[k - 1].l2_C;
            w.offer((series[k].l2_C - prev) / std::max(prev, kTiny), static_cast<int>(k));
        }
        out.push_back(finish(EstimateId::ConcentrationMonotone, w, cfg.slack_tol));
    }
    {
        const double c0 = series.front().l2_C * series.front().l2_C;
        double dissipated = 0.0;
        Worst w;
        for (std::size_t k = 1; k < series.size(); ++k) {
            const double dt = series[k].t - series[k - 1].t;
            dissipated += 2.0 * cfg.d * dt * series[k].h1s_C * series[k].h1s_C;
            const double lhs = series[k].l2_C * series[k].l2_C + dissipated;
            w.offer((lhs - c0) / std::max(c0, kTiny), static_cast<int>(k));
        }
        EstimateReport r = finish(EstimateId::ConcentrationLedger, w, cfg.slack_tol);
        if (!refinement.empty()) {
            std::vector<double> dts, ex;
            for (const auto& run : refinement) {
                dts.push_back(run.dt);
                ex.push_back(ledger_step_excess(run.series, cfg.d));
            }
            r.observed_order = observed_order(dts, ex);
        }
        out.push_back(r);
    }
    if (cfg.decay_regime) {
        Worst w;
        for (std::size_t k = 1; k < series.size(); ++k) {
            const double prev = series[k - 1].energy;
            w.offer((series[k].energy - prev) / std::max(prev, kTiny), static_cast<int>(k));
        }
        EstimateReport r = finish(EstimateId::CorollaryDecay, w, cfg.slack_tol);
        if (!refinement.empty()) {
            std::vector<double> dts, ex;
            for (const auto& run : refinement) {
                dts.push_back(run.dt);
                ex.push_back(energy_step_excess(run.series));
            }
            r.observed_order = observed_order(dts, ex);
        }
        out.push_back(r);
    }
    {
        // Violation is the ratio to the allowed bound, so the tolerance is 1.
        Worst w;
        for (std::size_t k = 0; k < series.size(); ++k) {
            const double bound = cfg.div_tol * (series[k].l2_U / cfg.hmin + 1.0);
            w.offer(series[k].div_residual / bound, static_cast<int>(k));
        }
        out.push_back(finish(EstimateId::Divergence, w, 1.0));
    }
    const bool have_pressure = std::all_of(series.begin(), series.end(),
                                           [](const DiagnosticsRecord& r) { return r.p_mean.has_value(); });
    if (have_pressure) {
        Worst w;
        for (std::size_t k = 0; k < series.size(); ++k) w.offer(std::abs(*series[k].p_mean), static_cast<int>(k));
        out.push_back(finish(EstimateId::PressureMean, w, cfg.pressure_mean_tol));
    }
    return out;
}

bool all_pass(const std::vector<EstimateReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const EstimateReport& r) { return r.pass; });
}

std::string format_reports(const std::vector<EstimateReport>& reports) {
    std::ostringstream os;
    os.precision(6);
    for (const auto& r : reports) {
        os << (r.pass ? "PASS " : "FAIL ") << to_string(r.id) << " worst=" << r.worst_violation
           << " tol=" << r.tolerance << " at=" << r.where;
        if (r.observed_order) os << " order=" << *r.observed_order;
        os << '\n';
    }
    return os.str();
}

}  // namespace bksim
