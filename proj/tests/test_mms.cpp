#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "bksim/diagnostics.hpp"
#include "bksim/mms.hpp"
#include "support.hpp"

using namespace bksim;

namespace {

// Values frozen from symbolic differentiation of the closed forms.
std::map<std::string, double> load_point_fixture() {
    std::ifstream in(std::string(BKSIM_FIXTURES) + "/mms_point.txt");
    REQUIRE(in);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        double value = 0.0;
        ls >> key >> value;
        out[key] = value;
    }
    return out;
}

Params fixture_params() {
    Params p;
    p.mu = 1.0;
    p.mu_e = 1.0;
    p.d = 1.0;
    p.alpha = 1.0;
    p.beta = 0.5;
    p.delta_hat = 0.01;
    p.gamma = 0.01;
    return p;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("closed forms and sources match the symbolic fixture") {
    const auto fx = load_point_fixture();
    const Grid g = make_grid(8, 8, 1.0, 1.0);
    const ManufacturedCase mc;
    const double x = 0.3, y = 0.7, t = 0.25;
    CHECK(close(mc.u(x, y, t, g), fx.at("u"), 1e-14));
    CHECK(close(mc.v(x, y, t, g), fx.at("v"), 1e-14));
    CHECK(close(mc.c(x, y, t, g), fx.at("C"), 1e-14));
    const PointSources s = mms_point_sources(mc, fixture_params(), g, x, y, t);
    CHECK(close(s.su, fx.at("source_u"), 1e-12));
    CHECK(close(s.sv, fx.at("source_v"), 1e-12));
    CHECK(close(s.sc, fx.at("source_C"), 1e-12));
}

TEST_CASE("streamfunction differences give the velocity") {
    const Grid g = make_grid(8, 8, 1.0, 1.0);
    const ManufacturedCase mc;
    const double x = 0.41, y = 0.23, t = 0.1, e = 1e-6;
    const double dpsidy = (mc.stream(x, y + e, t, g) - mc.stream(x, y - e, t, g)) / (2 * e);
    const double dpsidx = (mc.stream(x + e, y, t, g) - mc.stream(x - e, y, t, g)) / (2 * e);
    CHECK(mc.u(x, y, t, g) == doctest::Approx(dpsidy).epsilon(1e-8));
    CHECK(mc.v(x, y, t, g) == doctest::Approx(-dpsidx).epsilon(1e-8));
}

TEST_CASE("manufactured state is discretely divergence-free and close to the samples") {
    const ManufacturedCase mc;
    double prev = 0.0;
    for (int n : {16, 32}) {
        const Grid g = make_grid(n, n, 1.0, 1.0);
        const State s = manufactured_state(mc, g, 0.2);
        CHECK(s.velocity.no_penetration_holds());
        CHECK(divergence_residual(s.velocity) <= 1e-12);
        FaceVectorField diff = sample_velocity(mc, g, 0.2);
        for (std::size_t k = 0; k < diff.u_values().size(); ++k) diff.u_values()[k] -= s.velocity.u_values()[k];
        for (std::size_t k = 0; k < diff.v_values().size(); ++k) diff.v_values()[k] -= s.velocity.v_values()[k];
        const double err = l2_norm_faces(diff);
        if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.1));
        prev = err;
        CHECK(s.concentration == sample_concentration(mc, g, 0.2));
    }
}

TEST_CASE("manufactured sources vanish on walls and provide a scalar source") {
    const Grid g = make_grid(8, 8, 1.0, 1.0);
    const ManufacturedSources src(ManufacturedCase{}, fixture_params());
    FaceVectorField f(g);
    src.velocity_source(0.1, f);
    CHECK(f.no_penetration_holds());
    ScalarField sc(g);
    CHECK(src.scalar_source(0.1, sc));
    CHECK(sc.all_finite());
    CHECK_FALSE(src.is_zero());
}

TEST_CASE("level builders") {
    const auto s = spatial_levels(32, 0.01, 3);
    REQUIRE(s.size() == 3);
    CHECK(s[2].n == 128);
    CHECK(s[2].dt == doctest::Approx(0.01 / 16));
    const auto t = temporal_levels(64, 0.01, 3);
    CHECK(t[2].n == 64);
    CHECK(t[2].dt == doctest::Approx(0.0025));
}

TEST_CASE("small spatial study converges at second order") {
    const ManufacturedCase mc;
    const auto rows = convergence_study(mc, fixture_params(), spatial_levels(16, 0.0125, 2));
    REQUIRE(rows.size() == 2);
    CHECK(std::isnan(rows[0].order_C));
    CHECK(rows[1].err_C < rows[0].err_C);
    CHECK(rows[1].order_C == doctest::Approx(2.0).epsilon(0.2));
    CHECK(rows[1].order_U >= 1.5);
    const std::string csv = convergence_csv(rows);
    CHECK(csv.rfind("n,dt,err_C,err_U,order_C,order_U\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("small temporal study converges at first order") {
    const ManufacturedCase mc;
    MmsSetup setup;
    setup.step.cfl_override = true;
    const auto rows = temporal_study(mc, fixture_params(), 16, {0.02, 0.01, 0.005}, setup);
    REQUIRE(rows.size() == 3);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].order_C == doctest::Approx(1.0).epsilon(0.3));
        CHECK(rows[k].order_U == doctest::Approx(1.0).epsilon(0.3));
    }
}
