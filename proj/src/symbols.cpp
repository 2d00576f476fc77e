#include "bbmlab/symbols.hpp"

#include <cmath>
#include <numbers>

#include "bbmlab/errors.hpp"

namespace bbmlab {

DispersionModel DispersionModel::bbm(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw ConfigError("BBM parameter eps must lie in (0, 1], got " + shortest(eps));
    }
    return DispersionModel(ModelKind::bbm_eps, eps);
}

std::string DispersionModel::name() const {
    if (is_kdv()) return "kdv";
    return "bbm-eps(" + shortest(eps_) + ")";
}

double japanese_bracket(double x) { return std::hypot(1.0, x); }

namespace {

// <eps xi>^2 without forming the square root.
double bracket_sq(double eps, double xi) {
    const double e = eps * xi;
    return 1.0 + e * e;
}

}  // namespace

double symbol(const DispersionModel& m, double xi) {
    return xi * xi * xi / bracket_sq(m.eps(), xi);
}

double symbol_kdv_defect(const DispersionModel& m, double xi) {
    const double e2 = m.eps() * m.eps();
    const double xi2 = xi * xi;
    return e2 * xi2 * xi2 * xi / bracket_sq(m.eps(), xi);
}

double symbol_d1(const DispersionModel& m, double xi) {
    const double b = bracket_sq(m.eps(), xi);
    const double xi2 = xi * xi;
    return 3.0 * xi2 / b - 2.0 * m.eps() * m.eps() * xi2 * xi2 / (b * b);
}

double symbol_d2(const DispersionModel& m, double xi) {
    const double y = m.eps() * xi * m.eps() * xi;
    const double b = 1.0 + y;
    return 2.0 * xi * (3.0 - y) / (b * b * b);
}

double symbol_d3(const DispersionModel& m, double xi) {
    const double y = m.eps() * xi * m.eps() * xi;
    const double b = 1.0 + y;
    const double b2 = b * b;
    return 6.0 * (1.0 - 6.0 * y + y * y) / (b2 * b2);
}

InflectionPoints inflection_points(const DispersionModel& m) {
    InflectionPoints out;
    if (m.is_kdv()) return out;
    const double inv = 1.0 / m.eps();
    const double r2 = std::sqrt(3.0) * inv;
    out.second_derivative_zeros = {-r2, r2};
    // sqrt(3 +- 2 sqrt 2) = sqrt 2 +- 1; the product form avoids cancellation.
    const double hi = (std::numbers::sqrt2 + 1.0) * inv;
    const double lo = (std::numbers::sqrt2 - 1.0) * inv;
    out.third_derivative_zeros = {-hi, -lo, lo, hi};
    return out;
}

double resonance_z(const DispersionModel& m, double xi, double xi1) {
    return symbol(m, xi1) + symbol(m, xi - xi1);
}

double resonance_z_prime(const DispersionModel& m, double xi, double xi1) {
    const double a = bracket_sq(m.eps(), xi1);
    const double b = bracket_sq(m.eps(), xi - xi1);
    return xi * (2.0 * xi1 - xi) / (a * b) * (2.0 / a + 2.0 / b - 1.0);
}

double resonance_z_prime_unfactored(const DispersionModel& m, double xi, double xi1) {
    return symbol_d1(m, xi1) - symbol_d1(m, xi - xi1);
}

double resonance_gap(const DispersionModel& m, double xi) {
    return -0.75 * xi * xi * xi / (bracket_sq(m.eps(), xi) * bracket_sq(m.eps(), 0.5 * xi));
}

}  // namespace bbmlab
