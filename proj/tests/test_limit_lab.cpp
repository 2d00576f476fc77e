#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bbmlab/errors.hpp"
#include "bbmlab/limit_lab.hpp"
#include "bbmlab/spectral.hpp"

using namespace bbmlab;
using std::numbers::pi;

namespace {

SweepConfig small_sweep() {
    SweepConfig cfg;
    cfg.n = 512;
    cfg.length = 80.0;
    cfg.T = 0.2;
    cfg.dt = 2e-3;
    return cfg;
}

Trace band_limited_trace(const SpatialGrid& g) {
    Trace t;
    for (int i = 0; i < 4; ++i) {
        const double tau = 0.1 * i;
        t.push_back({tau, Field::from_function(g, [tau](double x) {
                         return std::exp(-(x - tau) * (x - tau)) + 0.3 * std::exp(-0.5 * (x + 2) * (x + 2));
                     })});
    }
    return t;
}

double max_diff(const Field& a, const Field& b) {
    double out = 0.0;
    for (std::size_t j = 0; j < a.physical().size(); ++j) {
        out = std::max(out, std::abs(a.physical()[j] - b.physical()[j]));
    }
    return out;
}

}  // namespace

TEST_CASE("difference_l2") {
    const auto g = make_grid(64, 10.0);
    const auto u = Field::from_function(g, [](double x) { return std::sin(x); });
    CHECK(difference_l2(u, u) == 0.0);
    const auto shifted = u + Field::from_function(g, [](double) { return 0.5; });
    CHECK(difference_l2(shifted, u) == doctest::Approx(0.5 * std::sqrt(10.0)).epsilon(1e-14));
    CHECK(difference_l2(shifted, u) == difference_l2(u, shifted));
    CHECK_THROWS_AS(difference_l2(u, Field(make_grid(32, 10.0))), InputError);
}

TEST_CASE("sweep config validation") {
    auto cfg = small_sweep();
    CHECK_NOTHROW(validate(cfg));
    cfg.eps_list = {0.1, 0.2, 0.05};
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_sweep();
    cfg.eps_list = {1.5, 0.1, 0.05};
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_sweep();
    cfg.s = 6.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_sweep();
    cfg.T = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_sweep();
    cfg.eps_list = {0.2, 0.1};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("run_pair") {
    auto cfg = small_sweep();
    cfg.initial_data = Sech2Data{0.0, 1.0, 0.0};
    for (const auto& s : run_pair(1.0, cfg)) CHECK(s.error == 0.0);

    cfg = small_sweep();
    const auto trace = run_pair(0.1, cfg);
    CHECK(trace.front().error == 0.0);
    CHECK(trace.back().time == doctest::Approx(cfg.T).epsilon(1e-14));
    CHECK(trace.size() == 11);  // t = 0, every 10 steps of 2e-3 up to 0.2
    CHECK(trace.back().error > 0.0);

    cfg.perturbation = 1e-3;
    CHECK(run_pair(0.1, cfg).front().error == doctest::Approx(1e-3).epsilon(1e-10));

    cfg = small_sweep();
    cfg.dt_overrides = {{0.1, 0.5}};
    cfg.enforce_ceiling = false;
    cfg.T = 50.0;
    bool aborted = false;
    try {
        run_pair(0.1, cfg);
    } catch (const AbortedPairError& e) {
        aborted = true;
        CHECK(e.eps() == 0.1);
        CHECK(e.time() > 0.0);
    }
    CHECK(aborted);
}

TEST_CASE("power-law fit") {
    std::vector<std::pair<double, double>> pairs;
    for (double e : {0.2, 0.1, 0.05, 0.025}) pairs.emplace_back(e, 3.0 * std::pow(e, 0.4));
    const auto fit = fit_power_law(pairs);
    CHECK(fit.slope == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(std::abs(fit.r_squared - 1.0) <= 1e-10);
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-10));

    pairs.clear();
    for (double e : {0.2, 0.1, 0.05}) pairs.emplace_back(e, e * e);
    CHECK(fit_power_law(pairs).slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isnan(fit_power_law({{0.1, 1.0}, {0.2, 2.0}}).r_squared));
    CHECK_THROWS_AS(fit_power_law({{0.1, 1.0}}), InsufficientDataError);
    CHECK_THROWS_AS(fit_power_law({{0.1, 1.0}, {0.2, -1.0}}), InputError);

    const auto synth = synthetic_sweep({{0.2, 0.2}, {0.1, 0.1}, {0.05, 0.05}}, 1.0);
    CHECK(synth.complete);
    CHECK(synth.rate_pass);
    CHECK(synth.strictly_decreasing);
    CHECK(synth.threshold == doctest::Approx(0.35));
    const auto slow = synthetic_sweep({{0.2, 0.2}, {0.1, 0.18}, {0.05, 0.16}}, 1.0);
    CHECK_FALSE(slow.rate_pass);
}

TEST_CASE("growth fit and horizon") {
    ErrorTrace t;
    for (int i = 0; i <= 20; ++i) t.push_back({0.5 * i, 0.01 * std::exp(0.5 * 0.5 * i)});
    const auto fit = fit_growth(t);
    CHECK(fit.k_hat == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(fit.c_hat == doctest::Approx(0.01).epsilon(1e-8));

    ErrorTrace flat;
    for (int i = 0; i < 5; ++i) flat.push_back({double(i), 0.3});
    CHECK(std::abs(fit_growth(flat).k_hat) < 1e-14);

    ErrorTrace sparse{{0.0, 0.0}, {1.0, 1e-15}, {2.0, 1e-3}, {3.0, 2e-3}};
    CHECK_THROWS_AS(fit_growth(sparse), InsufficientDataError);

    const auto h = validity_horizon(t, 1.0, 10.0);
    REQUIRE(h.has_value());
    // 0.01 e^{0.5 t} > 10 * 0.01 e^{0.5} first at t = 1 + 2 ln 10 = 5.605 -> recorded 6.0
    CHECK(*h == doctest::Approx(6.0));
    CHECK_FALSE(validity_horizon(flat, 1.0, 10.0).has_value());
    CHECK_THROWS_AS(validity_horizon(t, 0.3, 10.0), InputError);
}

TEST_CASE("scaling maps") {
    const auto g = make_grid(256, 40.0);
    const auto trace = band_limited_trace(g);

    const auto identity = rescale_to_physical({trace[0]}, 1.0);
    CHECK(max_diff(identity[0].field, trace[0].field) < 1e-13);

    for (double alpha : {1.0, 0.25, 0.01}) {
        const auto u = rescale_to_physical(trace, alpha);
        for (std::size_t i = 0; i < trace.size(); ++i) {
            CHECK(u[i].time == doctest::Approx(trace[i].time / std::pow(alpha, 1.5)));
            CHECK(u[i].field.grid().length() == doctest::Approx(40.0 / std::sqrt(alpha)));
            const double expected = std::pow(alpha, 0.75) * l2_norm(trace[i].field);
            CHECK(std::abs(l2_norm(u[i].field) - expected) <= 1e-10 * expected);
        }
        const double eps = std::sqrt(alpha);
        const auto back = unscale_to_rescaled(u, eps);
        for (std::size_t i = 0; i < trace.size(); ++i) {
            CHECK(back[i].time == doctest::Approx(trace[i].time).epsilon(1e-14));
            CHECK(max_diff(back[i].field, trace[i].field) <= 1e-10 * trace[i].field.max_abs());
        }
    }

    // Pointwise value of the normalized map on the physical grid.
    const double alpha = 0.25;
    const auto u = rescale_to_physical(trace, alpha);
    const auto& pg = u[2].field.grid();
    const double t = u[2].time;
    const auto expected = Field::from_function(pg, [&](double x) {
        const double y = std::sqrt(alpha) * (x - t);
        const double z = y - trace[2].time;
        return alpha * (std::exp(-z * z) + 0.3 * std::exp(-0.5 * (y + 2) * (y + 2)));
    });
    CHECK(max_diff(u[2].field, expected) < 1e-12);

    // bbm0 frame: translation only, which is a pure phase shift.
    const auto b = rescale_to_physical(trace, 0.25, Frame::bbm0);
    const auto ph = apply_multiplier(trace[1].field, [&](double xi) { return std::polar(1.0, -xi * b[1].time); });
    CHECK(b[1].time == doctest::Approx(0.4));
    CHECK(max_diff(b[1].field, ph) < 1e-12);
    const auto b_back = unscale_to_rescaled(b, 0.5, Frame::bbm0, {0.1, 0.3});
    REQUIRE(b_back.size() == 2);
    CHECK(max_diff(b_back[1].field, trace[3].field) < 1e-12);

    CHECK_THROWS_AS(unscale_to_rescaled(u, 0.5, Frame::normalized, {0.15}), InputError);
    CHECK(unscale_to_rescaled(rescale_to_physical(trace, 1.0), 1.0)[3].time == trace[3].time);
}

TEST_CASE("scaling map onto a target grid") {
    const auto g = make_grid(256, 40.0);
    const auto trace = band_limited_trace(g);
    const auto exact = rescale_to_physical(trace, 0.25);
    const auto target = make_grid(512, 60.0);
    const auto sampled = rescale_to_physical(trace, 0.25, Frame::normalized, target);
    const auto direct = Field::from_function(target, [&](double x) {
        const double y = 0.5 * (x - exact[1].time);
        const double z = y - trace[1].time;
        return 0.25 * (std::exp(-z * z) + 0.3 * std::exp(-0.5 * (y + 2) * (y + 2)));
    });
    CHECK(max_diff(sampled[1].field, direct) < 1e-10);

    CHECK_THROWS_AS(rescale_to_physical(trace, 0.25, Frame::normalized, make_grid(16, 60.0)), InterpolationError);
    CHECK_THROWS_AS(rescale_to_physical(trace, 0.25, Frame::normalized, make_grid(512, 200.0)), InterpolationError);
}

TEST_CASE("Strichartz ratio") {
    StrichartzConfig cfg;
    cfg.n = 256;
    cfg.length = 8 * pi;
    cfg.samples = 101;
    CHECK_THROWS_AS(check_admissible(6.0, std::numeric_limits<double>::infinity()), ConfigError);
    CHECK_THROWS_AS(check_admissible(18.0, 4.0), ConfigError);
    CHECK_NOTHROW(check_admissible(18.0, 3.0));
    CHECK_THROWS_AS(strichartz_ratio(0.1, 10.0, 3.0, 2, 0, cfg), ConfigError);

    const auto g = make_grid(cfg.n, cfg.length);
    CHECK(strichartz_ratio_for(Field(g), 0.1, 18.0, 3.0, cfg) == 0.0);
    RandomData d;
    d.seed = 5;
    const auto u0 = generate(d, g);
    const double r1 = strichartz_ratio_for(u0, 0.1, 18.0, 3.0, cfg);
    const double r2 = strichartz_ratio_for(u0.scaled(7.5), 0.1, 18.0, 3.0, cfg);
    CHECK(r1 > 0.0);
    CHECK(r2 == doctest::Approx(r1).epsilon(1e-12));

    const auto serial = strichartz_ratio(0.1, 18.0, 3.0, 4, 9, cfg, 1);
    const auto parallel = strichartz_ratio(0.1, 18.0, 3.0, 4, 9, cfg, 3);
    CHECK(serial == parallel);
    CHECK(serial[0] != serial[1]);
}
