#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbmlab/evolve.hpp"
#include "bbmlab/initial_data.hpp"
#include "bbmlab/trace.hpp"

namespace bbmlab {

/// Trapezoidal L2 norm of u - w. Throws InputError on a grid mismatch.
double difference_l2(const Field& u, const Field& w);

struct ErrorSample {
    double time;
    double error;
};
using ErrorTrace = std::vector<ErrorSample>;

struct SweepConfig {
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    double s = 1.0;  ///< regularity index of the rate 2s/5
    double T = 0.5;
    InitialData initial_data = Sech2Data{};
    std::size_t n = 2048;
    double length = 80.0;
    double dt = 1e-3;
    int record_every = 10;
    bool dealias = true;
    /// L2 size of the offset u_eps0 - w0 (0 = well-prepared data).
    double perturbation = 0.0;
    std::uint64_t seed = 0;
    /// Per-eps time-step overrides as (eps, dt).
    std::vector<std::pair<double, double>> dt_overrides;
    bool enforce_ceiling = true;

    double dt_for(double eps) const;
};

/// Throws ConfigError: eps strictly decreasing in (0,1], s in [1,5], T > 0.
void validate(const SweepConfig& cfg);

/// Initial data for both flows; the BBM data carries the optional offset
/// perturbation * sech / |sech|_2.
std::pair<Field, Field> pair_initial_data(const SweepConfig& cfg);

/// Co-evolves BBM_eps and KdV from the configured data with a shared grid
/// and dt, recording |u_eps(t) - w(t)|_2 every record_every steps and at T.
/// Throws AbortedPairError if either solver fails.
ErrorTrace run_pair(double eps, const SweepConfig& cfg);

/// Least-squares line through (log eps, log error).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  ///< NaN with fewer than 3 pairs
    std::vector<std::pair<double, double>> pairs;
};

/// Throws InsufficientDataError with fewer than 2 pairs, InputError on
/// non-positive entries.
RateFit fit_power_law(const std::vector<std::pair<double, double>>& pairs);

struct SweepEntry {
    double eps = 0.0;
    double sup_error = 0.0;
    double t_of_sup = 0.0;
    bool completed = false;
    std::string failure;
    ErrorTrace trace;
};

struct SweepResult {
    std::vector<SweepEntry> entries;  ///< ordered as cfg.eps_list
    std::optional<RateFit> fit;
    bool complete = false;
    double threshold = 0.0;        ///< 2s/5 - 0.05
    bool rate_pass = false;        ///< complete and slope >= threshold
    bool strictly_decreasing = false;
};

double rate_threshold(double s);

/// Runs every pair (concurrently with jobs > 1) and fits the sup errors.
SweepResult run_sweep(const SweepConfig& cfg, int jobs = 1);

/// Builds a SweepResult from injected (eps, error) pairs, bypassing the PDE.
SweepResult synthetic_sweep(const std::vector<std::pair<double, double>>& pairs, double s);

struct GrowthFit {
    double k_hat = 0.0;
    double c_hat = 0.0;
    std::vector<double> times;
    std::vector<double> errors;
};

/// Least squares on (t, log error), ignoring errors below 1e-13.
/// Throws InsufficientDataError with fewer than 3 usable points.
GrowthFit fit_growth(const ErrorTrace& trace);

/// First recorded time after reference_time where the error exceeds
/// factor * error(reference_time); nullopt if it never does. Throws
/// InputError when reference_time is not a recorded time.
std::optional<double> validity_horizon(const ErrorTrace& trace, double reference_time, double factor);

struct GrowthEntry {
    double eps = 0.0;
    bool completed = false;
    std::string failure;
    ErrorTrace trace;
    std::optional<GrowthFit> fit;
    double reference_error = 0.0;
    std::optional<double> horizon;
};

enum class Verdict { pass, fail, incomplete };
std::string to_string(Verdict v);

struct GrowthResult {
    std::vector<GrowthEntry> entries;  ///< ordered as cfg.eps_list
    Verdict verdict = Verdict::incomplete;
    std::string reason;
};

/// Long-time runs for every eps in cfg.eps_list (at least 2). The verdict
/// passes when each smaller eps has a strictly later validity horizon; a
/// horizon that is never reached counts as later than T. Both horizons
/// unreached leaves the comparison undecided, which is reported as fail.
GrowthResult run_growth(const SweepConfig& cfg, double reference_time, double factor, int jobs = 1);

/// Frames for the scaling maps.
///
/// normalized: u_t + u_x + (u^2)_x - u_txx = 0 with
///             u(t, x) = alpha w(alpha^{3/2} t, alpha^{1/2} (x - t)).
/// bbm0:       BBM with parameter alpha, u(t, x) = w(alpha t, x - t).
enum class Frame { normalized, bbm0 };

/// Maps a rescaled-frame trace (times tau, grid of length L) to the
/// physical frame. Without a target grid the output lives on the dilated
/// grid of length L / alpha^{1/2} (normalized) or L (bbm0), which is exact.
/// With a target grid the trigonometric interpolant is evaluated there;
/// InterpolationError if the target cannot resolve the profile or does not
/// fit in one period.
Trace rescale_to_physical(const Trace& w_trace, double alpha, Frame frame = Frame::normalized,
                          const std::optional<SpatialGrid>& target = std::nullopt);

/// Inverse of rescale_to_physical with alpha = eps^2 (dilated-grid case).
/// With requested rescaled times, returns only those snapshots; InputError
/// if a requested time is not in the trace.
Trace unscale_to_rescaled(const Trace& u_trace, double eps, Frame frame = Frame::normalized,
                          const std::vector<double>& requested_times = {});

struct StrichartzConfig {
    std::size_t n = 1024;
    double length = 100.53096491487338;  ///< 32 pi
    double window = 2.0;                 ///< evolve over [-window, window]
    int samples = 401;
    double s = 1.0;                      ///< decay of the random data
};

/// Throws ConfigError unless 3/q + 1/r = 1/2, 6 < q < inf and 2 <= r < inf.
void check_admissible(double q, double r);

/// |S_eps(t) P_{>1/(5 eps)} u0|_{L^q_t L^r_x} / (eps^{4/q} | |d_x|^{4/q} u0 |_2)
/// over the sampled window; 0 when the numerator vanishes.
double strichartz_ratio_for(const Field& u0, double eps, double q, double r, const StrichartzConfig& cfg);

/// Ratios for a seeded ensemble of band-limited random data; member i uses
/// stream i, so results do not depend on `jobs`.
std::vector<double> strichartz_ratio(double eps, double q, double r, int ensemble_size, std::uint64_t seed,
                                     const StrichartzConfig& cfg = {}, int jobs = 1);

}  // namespace bbmlab
