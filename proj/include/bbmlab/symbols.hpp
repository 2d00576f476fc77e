#pragma once

#include <string>
#include <vector>

namespace bbmlab {

enum class ModelKind { bbm_eps, kdv };

/// Which flow is evolved: the rescaled BBM with parameter eps, or KdV.
class DispersionModel {
public:
    /// Throws ConfigError unless 0 < eps <= 1.
    static DispersionModel bbm(double eps);
    static DispersionModel kdv() noexcept { return DispersionModel(ModelKind::kdv, 0.0); }

    ModelKind kind() const noexcept { return kind_; }
    bool is_kdv() const noexcept { return kind_ == ModelKind::kdv; }

    /// eps for BBM; 0 for KdV (the formulas reduce to KdV at eps = 0).
    double eps() const noexcept { return eps_; }

    std::string name() const;

    bool operator==(const DispersionModel&) const = default;

private:
    DispersionModel(ModelKind kind, double eps) noexcept : kind_(kind), eps_(eps) {}

    ModelKind kind_;
    double eps_;
};

/// <x> = sqrt(1 + x^2)
double japanese_bracket(double x);

/// s_eps(xi) = xi^3 / (1 + eps^2 xi^2); xi^3 for KdV.
double symbol(const DispersionModel& m, double xi);

/// xi^3 - s_eps(xi), evaluated as eps^2 xi^5 / (1 + eps^2 xi^2).
double symbol_kdv_defect(const DispersionModel& m, double xi);

double symbol_d1(const DispersionModel& m, double xi);
/// 2 xi (3 - eps^2 xi^2) / (1 + eps^2 xi^2)^3; 6 xi for KdV.
double symbol_d2(const DispersionModel& m, double xi);
/// 6 (1 - 6 eps^2 xi^2 + eps^4 xi^4) / (1 + eps^2 xi^2)^4; 6 for KdV.
double symbol_d3(const DispersionModel& m, double xi);

struct InflectionPoints {
    std::vector<double> second_derivative_zeros;  ///< +-sqrt(3)/eps
    std::vector<double> third_derivative_zeros;   ///< +-sqrt(3 +- 2 sqrt 2)/eps
};

/// Nonzero roots of s_eps'' and s_eps''' in closed form; empty for KdV.
InflectionPoints inflection_points(const DispersionModel& m);

/// z(xi1) = s(xi1) + s(xi - xi1).
double resonance_z(const DispersionModel& m, double xi, double xi1);

/// dz/dxi1 in factored form:
/// xi (2 xi1 - xi) / (<eps xi1>^2 <eps(xi-xi1)>^2) * (2/<eps xi1>^2 + 2/<eps(xi-xi1)>^2 - 1).
double resonance_z_prime(const DispersionModel& m, double xi, double xi1);

/// dz/dxi1 as the plain difference s'(xi1) - s'(xi - xi1).
double resonance_z_prime_unfactored(const DispersionModel& m, double xi, double xi1);

/// z(xi/2) - s(xi) = -(3/4) xi^3 <eps xi>^{-2} <eps xi/2>^{-2}.
double resonance_gap(const DispersionModel& m, double xi);

}  // namespace bbmlab
