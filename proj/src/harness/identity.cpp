#include "bbmlab/harness/identity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bbmlab/errors.hpp"
#include "bbmlab/symbols.hpp"

namespace bbmlab::harness {

bool IdentityReport::pass() const {
    return std::all_of(identities.begin(), identities.end(), [](const IdentityResidual& r) { return r.pass(); });
}

namespace {

void record(IdentityResidual& r, double residual, double eps, double xi, double xi1) {
    if (!(residual <= r.max_residual)) {
        r.max_residual = residual;
        r.worst_eps = eps;
        r.worst_xi = xi;
        r.worst_xi1 = xi1;
    }
}

}  // namespace

IdentityReport run_identity_check(std::uint64_t seed, long samples) {
    if (samples < 1) throw ConfigError("sample_count must be >= 1");
    IdentityReport report;
    report.seed = seed;
    report.samples = samples;

    IdentityResidual zp{"z_prime_factored",
                        "factored dz/dxi1 vs s'(xi1) - s'(xi - xi1), relative to |s'(xi1)| + |s'(xi - xi1)|",
                        0.0, 1e-10};
    IdentityResidual gap{"resonance_gap", "-(3/4) xi^3 <eps xi>^-2 <eps xi/2>^-2 vs z(xi/2) - s(xi), relative",
                         0.0, 1e-12};
    IdentityResidual d2{"s2_zeros", "|s''(+-sqrt(3)/eps)|", 0.0, 1e-10};
    IdentityResidual d3{"s3_zeros", "|s'''(+-sqrt(3 +- 2 sqrt 2)/eps)|", 0.0, 1e-10};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = 0; i < samples; ++i) {
        const double eps = std::pow(10.0, -3.0 * unit(rng));
        const double xi = (20.0 * unit(rng) - 10.0) / eps;
        const double xi1 = (20.0 * unit(rng) - 10.0) / eps;
        const auto m = DispersionModel::bbm(eps);

        const double scale = std::abs(symbol_d1(m, xi1)) + std::abs(symbol_d1(m, xi - xi1));
        const double zdiff = std::abs(resonance_z_prime(m, xi, xi1) - resonance_z_prime_unfactored(m, xi, xi1));
        record(zp, scale > 0.0 ? zdiff / scale : zdiff, eps, xi, xi1);

        const double closed = resonance_gap(m, xi);
        const double direct = resonance_z(m, xi, 0.5 * xi) - symbol(m, xi);
        const double gdiff = std::abs(closed - direct);
        record(gap, closed != 0.0 ? gdiff / std::abs(closed) : gdiff, eps, xi, 0.5 * xi);

        const auto roots = inflection_points(m);
        for (double r : roots.second_derivative_zeros) record(d2, std::abs(symbol_d2(m, r)), eps, r, 0.0);
        for (double r : roots.third_derivative_zeros) record(d3, std::abs(symbol_d3(m, r)), eps, r, 0.0);
    }
    report.identities = {zp, gap, d2, d3};
    return report;
}

}  // namespace bbmlab::harness
