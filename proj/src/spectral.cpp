#include "bbmlab/spectral.hpp"

#include <cmath>
#include <limits>

#include "bbmlab/errors.hpp"

namespace bbmlab {

Field apply_multiplier(const Field& f, const Multiplier& m) {
    const auto& xi = f.grid().frequencies();
    std::vector<Complex> modes(f.spectral());
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Complex factor = m(xi[j]);
        if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
            throw MultiplierDomainError("multiplier is not finite at xi = " + shortest(xi[j]));
        }
        modes[j] *= factor;
    }
    return Field::from_spectral(f.grid(), modes);
}

Field dealias(const Field& f) {
    const auto& grid = f.grid();
    const long cutoff = grid.dealias_cutoff();
    std::vector<Complex> modes(f.spectral());
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (std::abs(grid.mode_index(j)) > cutoff) modes[j] = 0.0;
    }
    return Field::from_spectral(grid, modes);
}

double l2_norm(const Field& f) {
    double sum = 0.0;
    for (double v : f.physical()) sum += v * v;
    return std::sqrt(sum * f.grid().spacing());
}

double sobolev_norm(const Field& f, double s) {
    if (s < 0.0) throw OutOfScopeError("negative regularity Sobolev norms are not supported");
    const auto& grid = f.grid();
    const auto& xi = grid.frequencies();
    const auto& modes = f.spectral();
    double sum = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double weight = s == 0.0 ? 1.0 : std::pow(1.0 + xi[j] * xi[j], s);
        sum += weight * std::norm(modes[j]);
    }
    const double n = static_cast<double>(grid.size());
    return std::sqrt(sum * grid.length() / (n * n));
}

double lp_tx_norm(const Trace& trace, double q, double p) {
    if (trace.empty()) throw InputError("lp_tx_norm: empty trace");
    if (!(q >= 1.0) || !std::isfinite(q) || !(p >= 1.0) || !std::isfinite(p)) {
        throw ConfigError("lp_tx_norm requires finite exponents q, p >= 1");
    }
    const auto& grid = trace.front().field.grid();
    std::vector<double> slice(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& snap = trace[i];
        if (snap.field.grid() != grid) throw InputError("lp_tx_norm: trace mixes grids");
        if (i > 0 && !(snap.time > trace[i - 1].time)) {
            throw InputError("lp_tx_norm: times must be strictly increasing");
        }
        double sum = 0.0;
        for (double v : snap.field.physical()) sum += std::pow(std::abs(v), p);
        const double lp = std::pow(sum * grid.spacing(), 1.0 / p);
        slice[i] = std::pow(lp, q);
    }
    double integral = 0.0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        integral += 0.5 * (trace[i].time - trace[i - 1].time) * (slice[i] + slice[i - 1]);
    }
    return std::pow(integral, 1.0 / q);
}

namespace {

double bump_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    const double a = bump_tail(t);
    const double b = bump_tail(1.0 - t);
    return a / (a + b);
}

constexpr double kPlateauEdge = 9.0 / 5.0;
constexpr double kSupportEdge = 2.0;

}  // namespace

double lp_lowpass_profile(double xi) {
    const double a = std::abs(xi);
    if (a <= kPlateauEdge) return 1.0;
    if (a >= kSupportEdge) return 0.0;
    return smooth_step((kSupportEdge - a) / (kSupportEdge - kPlateauEdge));
}

double lp_cutoff(double xi) { return lp_lowpass_profile(xi) - lp_lowpass_profile(2.0 * xi); }

Field lp_project(const Field& f, double N, Projection mode) {
    if (!(N > 0.0) || !std::isfinite(N)) throw ConfigError("projection scale must be positive");
    switch (mode) {
        case Projection::single_shell:
            return apply_multiplier(f, [N](double xi) { return Complex(lp_cutoff(xi / N)); });
        case Projection::low_pass:
            return apply_multiplier(f, [N](double xi) { return Complex(lp_lowpass_profile(xi / N)); });
        case Projection::high_pass:
            return apply_multiplier(f, [N](double xi) { return Complex(std::abs(xi) > N ? 1.0 : 0.0); });
    }
    throw ConfigError("unknown projection mode");
}

}  // namespace bbmlab
