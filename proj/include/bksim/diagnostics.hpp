#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bksim/grid.hpp"
#include "bksim/operators.hpp"
#include "bksim/timestepper.hpp"

namespace bksim {

double l2_norm_cc(const ScalarField& c);
double l2_norm_faces(const FaceVectorField& w);
/// ||grad C|| with the face gradient of gradient_cc_to_faces.
double h1_seminorm_cc(const ScalarField& c);
/// sqrt(-(L_D U, U)), the discrete Dirichlet energy under no-slip ghosts.
double h1_seminorm_faces(const FaceVectorField& w);
/// Max-norm of the discrete divergence.
double divergence_residual(const FaceVectorField& w);

struct DiagnosticsRecord {
    double t = 0.0;
    double l2_C = 0.0;
    double h1s_C = 0.0;
    double l2_U = 0.0;
    double h1s_U = 0.0;
    double energy = 0.0;  ///< (l2_U^2 + delta_hat h1s_C^2) / 2
    double mass = 0.0;
    double div_residual = 0.0;
    double dt = 0.0;
    long cg_iters = 0;
    /// Mean of p_tilde; not part of the CSV schema, absent after a CSV round trip.
    std::optional<double> p_mean;
};

struct RecordExtras {
    double dt_used = 0.0;
    long cg_iters = 0;
};

DiagnosticsRecord record(const State& s, const Params& p, const RecordExtras& extras = {});

enum class EstimateId { ConcentrationMonotone, ConcentrationLedger, CorollaryDecay, Divergence, PressureMean };

const char* to_string(EstimateId id);

struct EstimateReport {
    EstimateId id{};
    bool pass = true;
    double worst_violation = 0.0;
    int where = -1;  ///< series index of the worst violation, -1 when none
    double tolerance = 0.0;
    std::optional<double> observed_order;
};

struct EstimateConfig {
    double d = 1.0;          ///< diffusivity, needed by the dissipation ledger
    double hmin = 1.0;       ///< smallest spacing, scales the divergence bound
    double slack_tol = 1e-6;
    double div_tol = 1e-10;
    double pressure_mean_tol = 1e-13;
    /// Enables corollary_decay; meaningful only when beta = 0, f = 0, g = 0.
    bool decay_regime = false;
};

/// One run of a dt-refinement family.
struct RefinementRun {
    double dt = 0.0;
    std::vector<DiagnosticsRecord> series;
};

/// Largest per-record increase of ||C||^2 + 2 d dt ||grad C||^2 over the
/// previous ||C||^2, relative to ||C0||^2. Zero when the ledger never grows.
double ledger_step_excess(const std::vector<DiagnosticsRecord>& series, double d);
/// Largest per-record energy increase relative to the initial energy.
double energy_step_excess(const std::vector<DiagnosticsRecord>& series);

/// Observed order p in excess(dt) ~ dt^p from consecutive refinement pairs
/// (minimum over pairs). Empty when an excess is zero or below `floor`.
std::optional<double> observed_order(const std::vector<double>& dts,
                                     const std::vector<double>& excess, double floor = 1e-300);

/// Evaluates the enabled estimates on a time-sorted series. pressure_mean is
/// only reported when every record carries p_mean. Throws Error(EmptySeries).
std::vector<EstimateReport> check_estimates(const std::vector<DiagnosticsRecord>& series,
                                            const EstimateConfig& cfg,
                                            const std::vector<RefinementRun>& refinement = {});

bool all_pass(const std::vector<EstimateReport>& reports);

std::string format_reports(const std::vector<EstimateReport>& reports);

}  // namespace bksim
