#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bbmlab/field.hpp"
#include "bbmlab/invariants.hpp"
#include "bbmlab/symbols.hpp"
#include "bbmlab/trace.hpp"

namespace bbmlab {

struct EvolutionState {
    DispersionModel model;
    double time = 0.0;
    Field field;
    long step_count = 0;
};

struct StepperConfig {
    double dt = 1e-3;
    bool dealias = true;
    bool nonlinear = true;  ///< false evolves the linear flow only
    int record_every = 1;
    /// When false the stability ceiling is not checked (used to provoke blow-up).
    bool enforce_ceiling = true;
};

/// Published time-step ceiling 1 / (4 max|xi| max|u|); +inf for the zero field.
double stability_ceiling(const Field& field);

/// Largest |u| over the outer 5% of the domain relative to max |u|.
double boundary_decay_ratio(const Field& field);
inline constexpr double kBoundaryDecayTolerance = 1e-8;

/// Exact linear flow: modes times e^{i dt s(xi)}. The unpaired Nyquist mode
/// is held fixed so the map stays real and unitary.
EvolutionState linear_propagate(const EvolutionState& state, double delta_t);

/// -M(xi) DFT(u^2) with M = i xi / (1 + eps^2 xi^2), or i xi for KdV.
/// With dealias on, u is truncated before squaring and the product after.
/// Throws BlowUpError if u^2 overflows.
Field nonlinear_rhs(const Field& field, const DispersionModel& model, bool dealias = true);

/// One integrating-factor RK4 step of size cfg.dt.
EvolutionState step_ifrk4(const EvolutionState& state, const StepperConfig& cfg);

/// Stateful IFRK4 stepper that keeps the solution in spectral form between
/// steps. One Integrator is owned by one thread.
class Integrator {
public:
    /// Throws ConfigError if cfg is invalid or cfg.dt exceeds the stability
    /// ceiling of the initial field.
    Integrator(const EvolutionState& state, const StepperConfig& cfg);
    ~Integrator();
    Integrator(Integrator&&) noexcept;
    Integrator& operator=(Integrator&&) noexcept;

    /// Advances by direction * cfg.dt (direction is +1 or -1). Times are
    /// computed as t0 + k * step so uniform records stay exactly uniform.
    void step(int direction = 1);
    /// Advances by an arbitrary h (used for a final partial step).
    void step_by(double h);

    double time() const noexcept;
    long step_count() const noexcept;
    Field field() const;
    EvolutionState state() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct EvolutionResult {
    EvolutionState state;
    Trace trace;
    InvariantLog invariant_log;
    std::vector<std::string> warnings;
};

/// Steps from state.time to the absolute time T (either direction), with a
/// final partial step when needed. Snapshots and invariants are recorded at
/// the start, every cfg.record_every steps and at the end.
/// Throws ConfigError if cfg.dt exceeds the stability ceiling of the initial
/// field, BlowUpError when the solution stops being finite.
EvolutionResult evolve_to(const EvolutionState& state, double T, const StepperConfig& cfg);

/// Max over trace times of the L2 norm of
///   u(t) - S(t) u(t0) + int_{t0}^{t} S(t - t1) N(u(t1)) dt1,
/// with the time integral by composite Simpson on the trace points.
/// Requires >= 3 uniformly spaced snapshots (InputError otherwise).
double duhamel_residual(const Trace& trace, const DispersionModel& model, bool nonlinear = true,
                        bool dealias = true);

}  // namespace bbmlab
