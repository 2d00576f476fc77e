#include "bbmlab/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "bbmlab/errors.hpp"
#include "bbmlab/spectral.hpp"

namespace bbmlab {

ConservedTriple conserved(const Field& field, const DispersionModel& model) {
    const auto& grid = field.grid();
    const auto& xi = grid.frequencies();
    const auto& modes = field.spectral();
    const double n = static_cast<double>(grid.size());
    const double parseval = grid.length() / (n * n);
    const double eps2 = model.eps() * model.eps();

    double mass = 0.0;
    for (double v : field.physical()) mass += v;
    mass *= grid.spacing();

    double l2 = 0.0;
    double grad = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double p = std::norm(modes[j]);
        l2 += p;
        grad += xi[j] * xi[j] * p;
    }
    l2 *= parseval;
    grad *= parseval;

    double cubic = 0.0;
    for (double v : dealias(field).physical()) cubic += v * v * v;
    cubic *= grid.spacing();

    return {mass, l2 + eps2 * grad, 0.5 * grad - cubic / 3.0};
}

double DriftReport::max() const noexcept { return std::max({e0, e1, e2}); }

DriftReport drift_report(const InvariantLog& log) {
    if (log.empty()) throw InputError("drift_report: empty invariant log");
    static constexpr double kFloor = 1e-14;
    const auto& first = log.front().values;
    auto rel = [](double now, double start) {
        return std::abs(now - start) / std::max(std::abs(start), kFloor);
    };
    DriftReport out;
    for (const auto& rec : log) {
        out.e0 = std::max(out.e0, rel(rec.values.e0, first.e0));
        out.e1 = std::max(out.e1, rel(rec.values.e1, first.e1));
        out.e2 = std::max(out.e2, rel(rec.values.e2, first.e2));
    }
    return out;
}

double gagliardo_nirenberg_ratio(const Field& field) {
    double cube = 0.0;
    for (double v : field.physical()) cube += std::abs(v * v * v);
    cube *= field.grid().spacing();
    if (cube == 0.0) return 0.0;
    const auto& grid = field.grid();
    const auto& xi = grid.frequencies();
    const auto& modes = field.spectral();
    double grad_sq = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) grad_sq += xi[j] * xi[j] * std::norm(modes[j]);
    const double n = static_cast<double>(grid.size());
    const double grad = std::sqrt(grad_sq * grid.length() / (n * n));
    const double l2 = l2_norm(field);
    return cube / (std::pow(l2, 2.5) * std::sqrt(grad));
}

double h1_apriori_ceiling(double R, double c_gn) {
    if (!(R > 0.0) || !(c_gn > 0.0)) {
        throw ConfigError("h1_apriori_ceiling requires R > 0 and C_GN > 0");
    }
    const double gradient_sq = 2.0 * R * R + 3.0 * std::pow(c_gn / 3.0, 4.0 / 3.0) * std::pow(R, 10.0 / 3.0);
    return std::sqrt(R * R + gradient_sq);
}

H1MonitorResult monitor_h1(const Trace& trace, double ceiling) {
    H1MonitorResult out;
    for (const auto& snap : trace) {
        const double h1 = sobolev_norm(snap.field, 1.0);
        const double ratio = h1 / ceiling;
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.time_of_worst = snap.time;
        }
        out.sup_h1 = std::max(out.sup_h1, h1);
    }
    out.pass = out.worst_ratio <= 1.0;
    return out;
}

}  // namespace bbmlab
