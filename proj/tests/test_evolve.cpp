#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bbmlab/errors.hpp"
#include "bbmlab/evolve.hpp"
#include "bbmlab/initial_data.hpp"
#include "bbmlab/spectral.hpp"
#include "oracles.hpp"

using namespace bbmlab;
using std::numbers::pi;

namespace {

double max_diff(const Field& a, const Field& b) {
    double out = 0.0;
    for (std::size_t j = 0; j < a.physical().size(); ++j) {
        out = std::max(out, std::abs(a.physical()[j] - b.physical()[j]));
    }
    return out;
}

Field random_smooth(const SpatialGrid& g, std::uint64_t seed) {
    RandomData d;
    d.seed = seed;
    d.max_mode = 20;
    return generate(d, g);
}

}  // namespace

TEST_CASE("soliton satisfies KdV (residual oracle)") {
    // w_t + w_xxx + 2 w w_x by Richardson-extrapolated central differences.
    const long double c = 1.0L;
    auto w = [c](long double x, long double t) {
        const long double s = 1 / std::cosh(std::sqrt(c) / 2 * (x - c * t));
        return 1.5L * c * s * s;
    };
    double worst = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.37) {
        for (double t : {0.0, 0.4, 1.0}) {
            const long double wt = oracle::central([&](long double s) { return w(x, s); }, t, 1e-2L, 1);
            const long double wx = oracle::central([&](long double s) { return w(s, t); }, x, 1e-2L, 1);
            const long double wxxx = oracle::central([&](long double s) { return w(s, t); }, x, 1e-2L, 3);
            worst = std::max(worst, double(std::abs(wt + wxxx + 2 * w(x, t) * wx)));
        }
    }
    CHECK(worst <= 1e-8);
    CHECK(soliton_profile(1.0, 0.0, 0.3, 0.2) == doctest::Approx(double(w(0.3L, 0.2L))).epsilon(1e-15));
}

TEST_CASE("linear_propagate") {
    const auto g = make_grid(64, 30.0);
    const auto u = random_smooth(g, 1);
    const EvolutionState s{DispersionModel::bbm(0.2), 0.0, u, 0};
    CHECK(max_diff(linear_propagate(s, 0.0).field, u) == 0.0);
    const auto once = linear_propagate(s, 1.3);
    const auto twice = linear_propagate(linear_propagate(s, 0.65), 0.65);
    CHECK(max_diff(once.field, twice.field) <= 1e-12);
    CHECK(once.time == 1.3);
    CHECK(std::abs(l2_norm(once.field) - l2_norm(u)) <= 1e-12 * l2_norm(u));

    const auto g2 = make_grid(16, 2 * pi);
    const auto sine = Field::from_function(g2, [](double x) { return std::sin(x); });
    const double t = 0.8;
    const auto moved = linear_propagate({DispersionModel::kdv(), 0.0, sine, 0}, t);
    const auto exact = Field::from_function(g2, [t](double x) { return std::sin(x + t); });
    CHECK(max_diff(moved.field, exact) <= 1e-13);
}

TEST_CASE("nonlinear_rhs") {
    const auto g = make_grid(32, 2 * pi);
    const auto m = DispersionModel::bbm(0.4);
    CHECK(nonlinear_rhs(Field(g), m).max_abs() == 0.0);
    CHECK(nonlinear_rhs(Field::from_function(g, [](double) { return 2.5; }), m).max_abs() < 1e-13);
    const auto sine = Field::from_function(g, [](double x) { return std::sin(x); });
    const auto expected = Field::from_function(g, [](double x) { return -std::sin(2 * x); });
    CHECK(max_diff(nonlinear_rhs(sine, DispersionModel::kdv()), expected) < 1e-13);
    // BBM coupling i xi / (1 + eps^2 xi^2) at xi = 2.
    CHECK(max_diff(nonlinear_rhs(sine, m), expected.scaled(1.0 / (1.0 + 0.16 * 4))) < 1e-13);
    const auto r = random_smooth(make_grid(128, 20.0), 4);
    CHECK(nonlinear_rhs(r, m).mode(0) == Complex(0.0, 0.0));
}

TEST_CASE("step_ifrk4 basics") {
    const auto g = make_grid(64, 20.0);
    StepperConfig cfg;
    const auto zero = step_ifrk4({DispersionModel::kdv(), 0.0, Field(g), 0}, cfg);
    CHECK(zero.field.max_abs() == 0.0);
    CHECK(zero.step_count == 1);
    cfg.dt = -1.0;
    CHECK_THROWS_AS(step_ifrk4({DispersionModel::kdv(), 0.0, Field(g), 0}, cfg), ConfigError);
}

TEST_CASE("soliton accuracy and fourth order") {
    const auto g = make_grid(2048, 80.0);
    const auto w0 = generate(SolitonData{1.0, 0.0}, g);
    const auto exact = Field::from_function(g, [](double x) { return soliton_profile(1.0, 0.0, x, 1.0); });
    auto error_at = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.record_every = 1000000;
        const auto run = evolve_to({DispersionModel::kdv(), 0.0, w0, 0}, 1.0, cfg);
        CHECK(run.state.time == doctest::Approx(1.0).epsilon(1e-14));
        return l2_norm(run.state.field - exact);
    };
    const double e1 = error_at(2e-3), e2 = error_at(1e-3), e3 = error_at(5e-4);
    CHECK(e2 <= 1e-6);
    CHECK(std::log2(e1 / e2) >= 3.7);
    CHECK(std::log2(e2 / e3) >= 3.7);
}

TEST_CASE("Richardson self-convergence on BBM") {
    const auto g = make_grid(256, 40.0);
    const auto u0 = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    auto run = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.record_every = 100000;
        return evolve_to({DispersionModel::bbm(0.2), 0.0, u0, 0}, 0.5, cfg).state.field;
    };
    const auto a = run(0.01), b = run(0.005), c = run(0.0025);
    const double ratio = l2_norm(a - b) / l2_norm(b - c);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("evolve_to bookkeeping") {
    const auto g = make_grid(128, 40.0);
    const auto u0 = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    const EvolutionState s{DispersionModel::bbm(0.1), 0.0, u0, 0};
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.record_every = 3;

    const auto still = evolve_to(s, 0.0, cfg);
    REQUIRE(still.trace.size() == 1);
    CHECK(max_diff(still.state.field, u0) == 0.0);

    const auto run = evolve_to(s, 0.105, cfg);
    // start, steps 3, 6, 9, final partial step
    REQUIRE(run.trace.size() == 5);
    CHECK(run.trace[1].time == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(run.trace.back().time == doctest::Approx(0.105).epsilon(1e-14));
    CHECK(run.invariant_log.size() == run.trace.size());
    CHECK(run.state.step_count == 11);

    cfg.dt = 10.0;
    CHECK_THROWS_AS(evolve_to(s, 1.0, cfg), ConfigError);
    cfg.dt = 0.01;
    CHECK_THROWS_AS(evolve_to(s, INFINITY, cfg), ConfigError);
}

TEST_CASE("reversibility") {
    const auto g = make_grid(512, 80.0);
    const auto u0 = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.record_every = 100000;
    for (const auto& m : {DispersionModel::bbm(0.1), DispersionModel::kdv()}) {
        const auto fwd = evolve_to({m, 0.0, u0, 0}, 1.0, cfg);
        const auto back = evolve_to(fwd.state, 0.0, cfg);
        CHECK(std::abs(back.state.time) < 1e-12);
        CHECK(l2_norm(back.state.field - u0) <= 1e-8);
    }
}

TEST_CASE("conservation on the reference run") {
    const auto g = make_grid(2048, 80.0);
    const auto u0 = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.record_every = 50;
    const auto run = evolve_to({DispersionModel::bbm(0.1), 0.0, u0, 0}, 1.0, cfg);
    const auto d = drift_report(run.invariant_log);
    CHECK(d.e0 <= 1e-8);
    CHECK(d.e1 <= 1e-8);
    CHECK(d.e2 <= 1e-8);
}

TEST_CASE("boundary decay monitor") {
    const auto g = make_grid(256, 10.0);
    const auto wide = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    CHECK(boundary_decay_ratio(wide) > kBoundaryDecayTolerance);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    const auto run = evolve_to({DispersionModel::kdv(), 0.0, wide, 0}, 0.01, cfg);
    CHECK(run.warnings.size() == 1);
    CHECK(boundary_decay_ratio(generate(Sech2Data{1.0, 1.0, 0.0}, make_grid(1024, 80.0))) < 1e-12);
}

TEST_CASE("blow-up is reported with a time") {
    const auto g = make_grid(256, 40.0);
    const auto u0 = generate(Sech2Data{1.0, 1.0, 0.0}, g);
    StepperConfig cfg;
    cfg.dt = 0.25;
    cfg.enforce_ceiling = false;
    bool thrown = false;
    try {
        evolve_to({DispersionModel::kdv(), 0.0, u0, 0}, 200.0, cfg);
    } catch (const BlowUpError& e) {
        thrown = true;
        CHECK(e.time() > 0.0);
    }
    CHECK(thrown);
}

TEST_CASE("Duhamel residual") {
    const auto g = make_grid(2048, 80.0);
    const auto u0 = generate(SolitonData{1.0, 0.0}, g);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.record_every = 10;
    cfg.nonlinear = false;
    const auto lin = evolve_to({DispersionModel::bbm(0.1), 0.0, u0, 0}, 0.2, cfg);
    CHECK(duhamel_residual(lin.trace, DispersionModel::bbm(0.1), false) <= 1e-12);

    cfg.nonlinear = true;
    const auto z = evolve_to({DispersionModel::kdv(), 0.0, Field(g), 0}, 0.05, cfg);
    CHECK(duhamel_residual(z.trace, DispersionModel::kdv()) == 0.0);

    Trace two(lin.trace.begin(), lin.trace.begin() + 2);
    CHECK_THROWS_AS(duhamel_residual(two, DispersionModel::kdv()), InputError);
    Trace uneven{lin.trace[0], lin.trace[1], lin.trace[3]};
    CHECK_THROWS_AS(duhamel_residual(uneven, DispersionModel::kdv()), InputError);

    auto residual_at = [&](int every) {
        cfg.record_every = every;
        const auto run = evolve_to({DispersionModel::bbm(0.1), 0.0, u0, 0}, 1.0, cfg);
        return duhamel_residual(run.trace, DispersionModel::bbm(0.1));
    };
    const double coarse = residual_at(20), fine = residual_at(10);
    CHECK(fine <= 1e-5);
    CHECK(std::log2(coarse / fine) >= 3.5);
}
