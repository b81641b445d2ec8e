#include "bksim/mms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bksim/diagnostics.hpp"

namespace bksim {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ManufacturedCase::stream(double x, double y, double t, const Grid& gr) const {
    const double sx = std::sin(kPi * x / gr.lx), sy = std::sin(kPi * y / gr.ly);
    return A * sx * sx * sy * sy * std::cos(omega * t);
}

double ManufacturedCase::u(double x, double y, double t, const Grid& gr) const {
    const double kx = kPi / gr.lx, ky = kPi / gr.ly;
    const double sx = std::sin(kx * x);
    return A * ky * sx * sx * std::sin(2.0 * ky * y) * std::cos(omega * t);
}

double ManufacturedCase::v(double x, double y, double t, const Grid& gr) const {
    const double kx = kPi / gr.lx, ky = kPi / gr.ly;
    const double sy = std::sin(ky * y);
    return -A * kx * std::sin(2.0 * kx * x) * sy * sy * std::cos(omega * t);
}

double ManufacturedCase::c(double x, double y, double t, const Grid& gr) const {
    return 1.0 + B * std::cos(kPi * x / gr.lx) * std::cos(kPi * y / gr.ly) * std::exp(-sigma * t);
}

PointSources mms_point_sources(const ManufacturedCase& mc, const Params& p, const Grid& gr,
                               double x, double y, double t) {
    const double kx = kPi / gr.lx, ky = kPi / gr.ly;
    const double sx = std::sin(kx * x), cx = std::cos(kx * x);
    const double sy = std::sin(ky * y), cy = std::cos(ky * y);
    const double s2x = std::sin(2.0 * kx * x), c2x = std::cos(2.0 * kx * x);
    const double s2y = std::sin(2.0 * ky * y), c2y = std::cos(2.0 * ky * y);
    const double cw = std::cos(mc.omega * t), sw = std::sin(mc.omega * t);
    const double decay = std::exp(-mc.sigma * t);

    const double u = mc.A * ky * sx * sx * s2y * cw;
    const double v = -mc.A * kx * s2x * sy * sy * cw;
    const double u_t = -mc.omega * mc.A * ky * sx * sx * s2y * sw;
    const double v_t = mc.omega * mc.A * kx * s2x * sy * sy * sw;
    const double lap_u = mc.A * ky * cw * s2y * (2.0 * kx * kx * c2x - 4.0 * ky * ky * sx * sx);
    const double lap_v = -mc.A * kx * cw * s2x * (2.0 * ky * ky * c2y - 4.0 * kx * kx * sy * sy);

    const double c = 1.0 + mc.B * cx * cy * decay;
    const double c_t = -mc.sigma * mc.B * cx * cy * decay;
    const double c_x = -mc.B * kx * sx * cy * decay;
    const double c_y = -mc.B * ky * cx * sy * decay;
    const double lap_c = -(kx * kx + ky * ky) * mc.B * cx * cy * decay;

    const double drag = p.mu * (p.alpha + p.beta * c);
    PointSources s;
    s.su = u_t + drag * u - p.mu_e * lap_u + p.delta_hat * c_x * lap_c;
    s.sv = v_t + drag * v - p.mu_e * lap_v + p.delta_hat * c_y * lap_c;
    s.sc = c_t + u * c_x + v * c_y - p.d * lap_c + mc.g * c;
    return s;
}

void ManufacturedSources::velocity_source(double t, FaceVectorField& out) const {
    const Grid& g = out.grid();
    out = FaceVectorField(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out.u(i, j) = mms_point_sources(case_, params_, g, g.xn(i), g.yc(j), t).su;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) out.v(i, j) = mms_point_sources(case_, params_, g, g.xc(i), g.yn(j), t).sv;
}

bool ManufacturedSources::scalar_source(double t, ScalarField& out) const {
    const Grid& g = out.grid();
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out(i, j) = mms_point_sources(case_, params_, g, g.xc(i), g.yc(j), t).sc;
    return true;
}

ScalarField sample_concentration(const ManufacturedCase& mc, const Grid& g, double t) {
    ScalarField c(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) c(i, j) = mc.c(g.xc(i), g.yc(j), t, g);
    return c;
}

FaceVectorField sample_velocity(const ManufacturedCase& mc, const Grid& g, double t) {
    FaceVectorField w(g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) w.u(i, j) = mc.u(g.xn(i), g.yc(j), t, g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) w.v(i, j) = mc.v(g.xc(i), g.yn(j), t, g);
    return w;
}

State manufactured_state(const ManufacturedCase& mc, const Grid& g, double t) {
    State s = make_state(g, t);
    s.concentration = sample_concentration(mc, g, t);
    std::vector<double> psi(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1), 0.0);
    auto at = [&](int i, int j) -> double& { return psi[static_cast<std::size_t>(i) * (g.ny + 1) + j]; };
    for (int i = 1; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) at(i, j) = mc.stream(g.xn(i), g.yn(j), t, g);
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) s.velocity.u(i, j) = (at(i, j + 1) - at(i, j)) / g.hy;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) s.velocity.v(i, j) = -(at(i + 1, j) - at(i, j)) / g.hx;
    return s;
}

std::vector<MmsLevel> spatial_levels(int n0, double dt0, int count) {
    std::vector<MmsLevel> levels;
    int n = n0;
    double dt = dt0;
    for (int k = 0; k < count; ++k, n *= 2, dt /= 4.0) levels.push_back({n, dt});
    return levels;
}

std::vector<MmsLevel> temporal_levels(int n, double dt0, int count) {
    std::vector<MmsLevel> levels;
    double dt = dt0;
    for (int k = 0; k < count; ++k, dt /= 2.0) levels.push_back({n, dt});
    return levels;
}

namespace {

State run_case(const ManufacturedCase& mc, const Params& p, const ManufacturedSources& sources, int n, double dt,
               const MmsSetup& setup) {
    const Grid g = make_grid(n, n, setup.lx, setup.ly);
    const Stepper stepper(g, p, ScalarField(g, mc.g), sources, setup.step);
    return run(stepper, manufactured_state(mc, g, 0.0), RunSchedule{dt, setup.t_final, 1 << 30, 0});
}

// L2 distances of concentration and velocity between two states on one grid.
std::pair<double, double> distance(const State& a, const ScalarField& c, const FaceVectorField& w) {
    ScalarField ec = c;
    auto ecv = ec.values();
    auto cv = a.concentration.values();
    for (std::size_t k = 0; k < ecv.size(); ++k) ecv[k] = cv[k] - ecv[k];
    FaceVectorField eu = w;
    auto euu = eu.u_values();
    auto uu = a.velocity.u_values();
    for (std::size_t k = 0; k < euu.size(); ++k) euu[k] = uu[k] - euu[k];
    auto euv = eu.v_values();
    auto vv = a.velocity.v_values();
    for (std::size_t k = 0; k < euv.size(); ++k) euv[k] = vv[k] - euv[k];
    return {l2_norm_cc(ec), l2_norm_faces(eu)};
}

void add_row(std::vector<ConvergenceRow>& rows, int n, double dt, std::pair<double, double> err) {
    ConvergenceRow row{n, dt, err.first, err.second, std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN()};
    if (!rows.empty()) {
        const ConvergenceRow& prev = rows.back();
        const double ratio = prev.n != row.n ? static_cast<double>(row.n) / prev.n : prev.dt / row.dt;
        row.order_C = std::log(prev.err_C / row.err_C) / std::log(ratio);
        row.order_U = std::log(prev.err_U / row.err_U) / std::log(ratio);
    }
    rows.push_back(row);
}

}  // namespace

std::vector<ConvergenceRow> temporal_study(const ManufacturedCase& mc, const Params& p, int n,
                                           const std::vector<double>& dts, const MmsSetup& setup,
                                           int reference_factor) {
    const ManufacturedSources sources(mc, p);
    double dt_min = dts.empty() ? setup.t_final : dts.front();
    for (double dt : dts) dt_min = std::min(dt_min, dt);
    const State ref = run_case(mc, p, sources, n, dt_min / reference_factor, setup);
    std::vector<ConvergenceRow> rows;
    for (double dt : dts) {
        const State s = run_case(mc, p, sources, n, dt, setup);
        add_row(rows, n, dt, distance(s, ref.concentration, ref.velocity));
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mc, const Params& p,
                                              const std::vector<MmsLevel>& levels, const MmsSetup& setup) {
    std::vector<ConvergenceRow> rows;
    const ManufacturedSources sources(mc, p);
    for (const MmsLevel& lv : levels) {
        const State s = run_case(mc, p, sources, lv.n, lv.dt, setup);
        const Grid& g = s.concentration.grid();
        add_row(rows, lv.n, lv.dt,
                distance(s, sample_concentration(mc, g, s.t), sample_velocity(mc, g, s.t)));
    }
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "n,dt,err_C,err_U,order_C,order_U\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.dt << ',' << r.err_C << ',' << r.err_U << ',' << r.order_C << ',' << r.order_U << '\n';
    return os.str();
}

}  // namespace bksim
