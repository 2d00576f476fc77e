#include "bbmlab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bbmlab/errors.hpp"
#include "bbmlab/fft.hpp"

namespace bbmlab {
namespace {

bool all_finite(const std::vector<Complex>& v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

// Pseudo-spectral engine on raw DFT-ordered mode vectors.
//
// u_t = i s(xi) u + N(u),  N(u) = -M(xi) P DFT((P u)^2)
//
// where P is the two-thirds truncation (identity when dealiasing is off).
class Engine {
public:
    Engine(const SpatialGrid& grid, const DispersionModel& model, bool dealias, bool nonlinear)
        : n_(grid.size()), symbol_(n_), coupling_(n_), keep_(n_, 1), nonlinear_(nonlinear),
          work_(n_), phys_(n_) {
        const auto& xi = grid.frequencies();
        const long cutoff = grid.dealias_cutoff();
        const std::size_t nyquist = n_ / 2;
        const double eps2 = model.eps() * model.eps();
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == nyquist) continue;  // odd symbols cannot act on the unpaired mode
            symbol_[j] = symbol(model, xi[j]);
            coupling_[j] = Complex(0.0, -xi[j] / (1.0 + eps2 * xi[j] * xi[j]));
            if (dealias && std::abs(grid.mode_index(j)) > cutoff) keep_[j] = 0;
        }
        if (dealias) keep_[nyquist] = 0;
    }

    std::size_t size() const noexcept { return n_; }

    void phases(double h, std::vector<Complex>& out) const {
        out.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) out[j] = std::polar(1.0, h * symbol_[j]);
    }

    /// out = N(u). Returns false if the product overflowed.
    bool nonlinear(const std::vector<Complex>& u, std::vector<Complex>& out) {
        out.resize(n_);
        if (!nonlinear_) {
            std::fill(out.begin(), out.end(), Complex());
            return true;
        }
        for (std::size_t j = 0; j < n_; ++j) work_[j] = keep_[j] ? u[j] : Complex();
        fft::inverse(work_, phys_);
        bool finite = true;
        for (auto& v : phys_) {
            const double r = v.real();
            v = Complex(r * r, 0.0);
            finite = finite && std::isfinite(v.real());
        }
        fft::forward(phys_, work_);
        for (std::size_t j = 0; j < n_; ++j) out[j] = keep_[j] ? coupling_[j] * work_[j] : Complex();
        return finite;
    }

    /// One IFRK4 step of size h, in place. Returns false on non-finite data.
    bool step(std::vector<Complex>& u, double h) {
        if (h != cached_h_) {
            phases(h, e_full_);
            phases(0.5 * h, e_half_);
            cached_h_ = h;
        }
        bool ok = nonlinear(u, k1_);
        for (std::size_t j = 0; j < n_; ++j) stage_[j] = e_half_[j] * (u[j] + 0.5 * h * k1_[j]);
        ok = nonlinear(stage_, k2_) && ok;
        for (std::size_t j = 0; j < n_; ++j) stage_[j] = e_half_[j] * u[j] + 0.5 * h * k2_[j];
        ok = nonlinear(stage_, k3_) && ok;
        for (std::size_t j = 0; j < n_; ++j) stage_[j] = e_full_[j] * u[j] + h * e_half_[j] * k3_[j];
        ok = nonlinear(stage_, k4_) && ok;
        for (std::size_t j = 0; j < n_; ++j) {
            u[j] = e_full_[j] * u[j] +
                   h / 6.0 * (e_full_[j] * k1_[j] + 2.0 * e_half_[j] * (k2_[j] + k3_[j]) + k4_[j]);
        }
        return ok && all_finite(u);
    }

    void propagate(std::vector<Complex>& u, double h) const {
        for (std::size_t j = 0; j < n_; ++j) u[j] *= std::polar(1.0, h * symbol_[j]);
    }

private:
    std::size_t n_;
    std::vector<double> symbol_;
    std::vector<Complex> coupling_;
    std::vector<char> keep_;
    bool nonlinear_;

    std::vector<Complex> work_, phys_;
    std::vector<Complex> k1_, k2_, k3_, k4_, stage_ = std::vector<Complex>(n_);
    std::vector<Complex> e_full_, e_half_;
    double cached_h_ = std::numeric_limits<double>::quiet_NaN();
};

void validate(const StepperConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be positive and finite");
    if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
}

double mode_l2(const SpatialGrid& grid, const std::vector<Complex>& modes) {
    double sum = 0.0;
    for (const auto& c : modes) sum += std::norm(c);
    const double n = static_cast<double>(grid.size());
    return std::sqrt(sum * grid.length() / (n * n));
}

}  // namespace

double stability_ceiling(const Field& field) {
    const double umax = field.max_abs();
    if (umax == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (4.0 * field.grid().max_abs_frequency() * umax);
}

double boundary_decay_ratio(const Field& field) {
    const auto& u = field.physical();
    const std::size_t n = u.size();
    const std::size_t edge = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.025 * static_cast<double>(n))));
    const double peak = field.max_abs();
    if (peak == 0.0) return 0.0;
    double outer = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
        outer = std::max({outer, std::abs(u[j]), std::abs(u[n - 1 - j])});
    }
    return outer / peak;
}

EvolutionState linear_propagate(const EvolutionState& state, double delta_t) {
    if (delta_t == 0.0) return state;
    Engine engine(state.field.grid(), state.model, false, false);
    std::vector<Complex> modes(state.field.spectral());
    engine.propagate(modes, delta_t);
    return {state.model, state.time + delta_t, Field::from_spectral(state.field.grid(), modes),
            state.step_count};
}

Field nonlinear_rhs(const Field& field, const DispersionModel& model, bool dealias) {
    Engine engine(field.grid(), model, dealias, true);
    std::vector<Complex> out;
    if (!engine.nonlinear(field.spectral(), out)) {
        throw BlowUpError("overflow in the quadratic nonlinearity", 0.0);
    }
    return Field::from_spectral(field.grid(), out);
}

EvolutionState step_ifrk4(const EvolutionState& state, const StepperConfig& cfg) {
    validate(cfg);
    Engine engine(state.field.grid(), state.model, cfg.dealias, cfg.nonlinear);
    std::vector<Complex> modes(state.field.spectral());
    if (!engine.step(modes, cfg.dt)) throw BlowUpError("non-finite value in IFRK4 stage", state.time);
    return {state.model, state.time + cfg.dt, Field::from_spectral(state.field.grid(), modes),
            state.step_count + 1};
}

struct Integrator::Impl {
    Impl(const EvolutionState& state, const StepperConfig& cfg)
        : model(state.model), grid(state.field.grid()), dt(cfg.dt),
          engine(grid, model, cfg.dealias, cfg.nonlinear), modes(state.field.spectral()),
          origin(state.time), time(state.time), base_steps(state.step_count) {}

    DispersionModel model;
    SpatialGrid grid;
    double dt;
    Engine engine;
    std::vector<Complex> modes;
    double origin;
    double time;
    long base_steps;
    long uniform_steps = 0;  // signed count of +-dt steps since origin
    long taken = 0;
    double partial = 0.0;
};

Integrator::Integrator(const EvolutionState& state, const StepperConfig& cfg) {
    validate(cfg);
    const double ceiling = stability_ceiling(state.field);
    if (cfg.enforce_ceiling && cfg.dt > ceiling) {
        std::ostringstream msg;
        msg << "dt = " << cfg.dt << " exceeds the stability ceiling " << ceiling;
        throw ConfigError(msg.str());
    }
    impl_ = std::make_unique<Impl>(state, cfg);
}

Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

void Integrator::step(int direction) {
    auto& s = *impl_;
    const double h = direction < 0 ? -s.dt : s.dt;
    if (!s.engine.step(s.modes, h)) throw BlowUpError("solution is no longer finite", s.time);
    s.uniform_steps += direction < 0 ? -1 : 1;
    ++s.taken;
    s.time = s.origin + static_cast<double>(s.uniform_steps) * s.dt + s.partial;
}

void Integrator::step_by(double h) {
    auto& s = *impl_;
    if (!s.engine.step(s.modes, h)) throw BlowUpError("solution is no longer finite", s.time);
    s.partial += h;
    ++s.taken;
    s.time = s.origin + static_cast<double>(s.uniform_steps) * s.dt + s.partial;
}

double Integrator::time() const noexcept { return impl_->time; }
long Integrator::step_count() const noexcept { return impl_->base_steps + impl_->taken; }
Field Integrator::field() const { return Field::from_spectral(impl_->grid, impl_->modes); }

EvolutionState Integrator::state() const {
    return {impl_->model, impl_->time, field(), step_count()};
}

EvolutionResult evolve_to(const EvolutionState& state, double T, const StepperConfig& cfg) {
    if (!std::isfinite(T)) throw ConfigError("target time must be finite");
    Integrator integrator(state, cfg);

    const DispersionModel model = state.model;
    const double span = T - state.time;
    const int direction = span < 0.0 ? -1 : 1;
    const double h = direction * cfg.dt;

    long full_steps = static_cast<long>(std::floor(std::abs(span) / cfg.dt));
    double remainder = span - static_cast<double>(full_steps) * h;
    // Absorb round-off so that a span of k dt gives exactly k steps.
    if (std::abs(remainder - h) <= 1e-9 * cfg.dt) {
        ++full_steps;
        remainder = 0.0;
    } else if (std::abs(remainder) <= 1e-9 * cfg.dt) {
        remainder = 0.0;
    }

    EvolutionResult result{state, {}, {}, {}};
    bool boundary_warned = false;
    auto record = [&]() {
        const double time = integrator.time();
        Field snap = integrator.step_count() == state.step_count ? state.field : integrator.field();
        result.invariant_log.push_back({time, conserved(snap, model)});
        const double decay = boundary_decay_ratio(snap);
        if (decay > kBoundaryDecayTolerance && !boundary_warned) {
            std::ostringstream msg;
            msg << "boundary decay " << decay << " exceeds " << kBoundaryDecayTolerance
                << " at t = " << time;
            result.warnings.push_back(msg.str());
            boundary_warned = true;
        }
        result.trace.push_back({time, std::move(snap)});
    };

    record();
    for (long k = 1; k <= full_steps; ++k) {
        integrator.step(direction);
        if (k % cfg.record_every == 0) record();
    }
    bool last_recorded = full_steps % cfg.record_every == 0;
    if (remainder != 0.0) {
        integrator.step_by(remainder);
        last_recorded = false;
    }
    if (!last_recorded) record();

    result.state = {model, integrator.time(), result.trace.back().field, integrator.step_count()};
    return result;
}

double duhamel_residual(const Trace& trace, const DispersionModel& model, bool nonlinear,
                        bool dealias) {
    if (trace.size() < 3) throw InputError("duhamel_residual needs at least 3 snapshots");
    const auto& grid = trace.front().field.grid();
    const double t0 = trace.front().time;
    const double spacing = trace[1].time - t0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].field.grid() != grid) throw InputError("duhamel_residual: trace mixes grids");
        const double gap = trace[i].time - trace[i - 1].time;
        if (std::abs(gap - spacing) > 1e-9 * std::abs(spacing) || spacing == 0.0) {
            throw InputError("duhamel_residual: trace spacing is not uniform");
        }
    }

    // Work in the interaction frame: v(t) = S(-(t - t0)) u(t), where the
    // integral equation reads v(t) = v(t0) + int S(-(t1 - t0)) N(u(t1)) dt1.
    Engine engine(grid, model, dealias, nonlinear);
    const std::size_t m = trace.size();
    const std::size_t n = grid.size();
    std::vector<std::vector<Complex>> frame(m), forcing(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double tau = trace[i].time - t0;
        frame[i] = trace[i].field.spectral();
        engine.propagate(frame[i], -tau);
        engine.nonlinear(trace[i].field.spectral(), forcing[i]);
        engine.propagate(forcing[i], -tau);
    }

    const double h = spacing;
    std::vector<double> weights;
    std::vector<Complex> residual(n);
    double worst = 0.0;
    for (std::size_t j = 2; j < m; ++j) {
        weights.assign(j + 1, 0.0);
        std::size_t simpson_end = j;
        if (j % 2 == 1) {
            simpson_end = j - 3;
            const double w = 3.0 * h / 8.0;
            weights[j - 3] += w;
            weights[j - 2] += 3.0 * w;
            weights[j - 1] += 3.0 * w;
            weights[j] += w;
        }
        for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
            weights[i] += h / 3.0;
            weights[i + 1] += 4.0 * h / 3.0;
            weights[i + 2] += h / 3.0;
        }
        for (std::size_t k = 0; k < n; ++k) {
            Complex integral;
            for (std::size_t i = 0; i <= j; ++i) integral += weights[i] * forcing[i][k];
            residual[k] = frame[j][k] - frame[0][k] - integral;
        }
        worst = std::max(worst, mode_l2(grid, residual));
    }
    return worst;
}

}  // namespace bbmlab
