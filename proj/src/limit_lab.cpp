#include "bbmlab/limit_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bbmlab/errors.hpp"
#include "bbmlab/parallel.hpp"
#include "bbmlab/spectral.hpp"

namespace bbmlab {

double difference_l2(const Field& u, const Field& w) {
    if (u.grid() != w.grid()) throw InputError("difference_l2: fields live on different grids");
    double sum = 0.0;
    const auto& a = u.physical();
    const auto& b = w.physical();
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return std::sqrt(sum * u.grid().spacing());
}

double SweepConfig::dt_for(double eps) const {
    for (const auto& [e, dt] : dt_overrides) {
        if (std::abs(e - eps) <= 1e-12 * eps) return dt;
    }
    return dt;
}

void validate(const SweepConfig& cfg) {
    if (cfg.eps_list.empty()) throw ConfigError("eps_list is empty");
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
        const double e = cfg.eps_list[i];
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eps_list entries must lie in (0, 1]");
        if (i > 0 && !(e < cfg.eps_list[i - 1])) throw ConfigError("eps_list must be strictly decreasing");
    }
    if (!(cfg.s >= 1.0 && cfg.s <= 5.0)) throw ConfigError("s must lie in [1, 5]");
    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConfigError("T must be positive and finite");
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
    if (!(cfg.perturbation >= 0.0)) throw ConfigError("perturbation must be non-negative");
    make_grid(cfg.n, cfg.length);
}

std::pair<Field, Field> pair_initial_data(const SweepConfig& cfg) {
    const SpatialGrid grid = make_grid(cfg.n, cfg.length);
    Field w0 = generate(cfg.initial_data, grid);
    if (cfg.perturbation == 0.0) return {w0, w0};
    const Field bump = Field::from_function(grid, [](double x) { return 1.0 / std::cosh(x); });
    return {w0 + bump.scaled(cfg.perturbation / l2_norm(bump)), w0};
}

ErrorTrace run_pair(double eps, const SweepConfig& cfg) {
    auto [u0, w0] = pair_initial_data(cfg);
    StepperConfig stepper{cfg.dt_for(eps), cfg.dealias, true, cfg.record_every, cfg.enforce_ceiling};

    ErrorTrace out;
    double time = 0.0;
    try {
        Integrator bbm({DispersionModel::bbm(eps), 0.0, u0, 0}, stepper);
        Integrator kdv({DispersionModel::kdv(), 0.0, w0, 0}, stepper);

        out.push_back({0.0, difference_l2(u0, w0)});
        const double dt = stepper.dt;
        long full_steps = static_cast<long>(std::floor(cfg.T / dt));
        double remainder = cfg.T - static_cast<double>(full_steps) * dt;
        if (std::abs(remainder - dt) <= 1e-9 * dt) {
            ++full_steps;
            remainder = 0.0;
        } else if (std::abs(remainder) <= 1e-9 * dt) {
            remainder = 0.0;
        }
        bool last_recorded = true;
        for (long k = 1; k <= full_steps; ++k) {
            bbm.step();
            kdv.step();
            time = bbm.time();
            last_recorded = k % cfg.record_every == 0;
            if (last_recorded) out.push_back({time, difference_l2(bbm.field(), kdv.field())});
        }
        if (remainder != 0.0) {
            bbm.step_by(remainder);
            kdv.step_by(remainder);
            time = bbm.time();
            last_recorded = false;
        }
        if (!last_recorded) out.push_back({time, difference_l2(bbm.field(), kdv.field())});
    } catch (const BlowUpError& e) {
        throw AbortedPairError(eps, e.time(), e.what());
    } catch (const ConfigError& e) {
        throw AbortedPairError(eps, time, e.what());
    }
    return out;
}

RateFit fit_power_law(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2) throw InsufficientDataError("a power-law fit needs at least 2 pairs");
    std::vector<double> x, y;
    for (const auto& [e, err] : pairs) {
        if (!(e > 0.0) || !(err > 0.0)) throw InputError("power-law fit needs positive pairs");
        x.push_back(std::log(e));
        y.push_back(std::log(err));
    }
    const double m = static_cast<double>(x.size());
    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
        syy += (y[i] - ybar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw InputError("power-law fit needs distinct eps values");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    fit.pairs = pairs;
    if (pairs.size() < 3) {
        fit.r_squared = std::numeric_limits<double>::quiet_NaN();
    } else if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += r * r;
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

double rate_threshold(double s) { return 2.0 * s / 5.0 - 0.05; }

namespace {

void finish_sweep(SweepResult& result, double s) {
    result.threshold = rate_threshold(s);
    result.complete = std::all_of(result.entries.begin(), result.entries.end(),
                                  [](const SweepEntry& e) { return e.completed; });
    std::vector<std::pair<double, double>> pairs;
    for (const auto& e : result.entries) {
        if (e.completed && e.sup_error > 0.0) pairs.emplace_back(e.eps, e.sup_error);
    }
    if (pairs.size() >= 2) result.fit = fit_power_law(pairs);
    result.strictly_decreasing = result.complete;
    for (std::size_t i = 1; i < result.entries.size() && result.strictly_decreasing; ++i) {
        result.strictly_decreasing = result.entries[i].sup_error < result.entries[i - 1].sup_error;
    }
    result.rate_pass = result.complete && result.fit && result.fit->slope >= result.threshold;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, int jobs) {
    validate(cfg);
    if (cfg.eps_list.size() < 3) throw ConfigError("a sweep needs at least 3 eps values");
    SweepResult result;
    result.entries.resize(cfg.eps_list.size());
    parallel_for(cfg.eps_list.size(), jobs, [&](std::size_t i) {
        SweepEntry& entry = result.entries[i];
        entry.eps = cfg.eps_list[i];
        try {
            entry.trace = run_pair(entry.eps, cfg);
            for (const auto& sample : entry.trace) {
                if (sample.error > entry.sup_error) {
                    entry.sup_error = sample.error;
                    entry.t_of_sup = sample.time;
                }
            }
            entry.completed = true;
        } catch (const Error& e) {
            entry.failure = e.what();
        }
    });
    finish_sweep(result, cfg.s);
    return result;
}

SweepResult synthetic_sweep(const std::vector<std::pair<double, double>>& pairs, double s) {
    SweepResult result;
    for (const auto& [eps, err] : pairs) {
        SweepEntry entry;
        entry.eps = eps;
        entry.sup_error = err;
        entry.completed = true;
        result.entries.push_back(entry);
    }
    finish_sweep(result, s);
    return result;
}

GrowthFit fit_growth(const ErrorTrace& trace) {
    GrowthFit fit;
    for (const auto& sample : trace) {
        if (sample.error >= 1e-13) {
            fit.times.push_back(sample.time);
            fit.errors.push_back(sample.error);
        }
    }
    if (fit.times.size() < 3) throw InsufficientDataError("growth fit needs at least 3 usable points");
    const double m = static_cast<double>(fit.times.size());
    double tbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < fit.times.size(); ++i) {
        tbar += fit.times[i];
        ybar += std::log(fit.errors[i]);
    }
    tbar /= m;
    ybar /= m;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < fit.times.size(); ++i) {
        stt += (fit.times[i] - tbar) * (fit.times[i] - tbar);
        sty += (fit.times[i] - tbar) * (std::log(fit.errors[i]) - ybar);
    }
    if (stt == 0.0) throw InsufficientDataError("growth fit needs distinct times");
    fit.k_hat = sty / stt;
    fit.c_hat = std::exp(ybar - fit.k_hat * tbar);
    return fit;
}

std::optional<double> validity_horizon(const ErrorTrace& trace, double reference_time, double factor) {
    const auto ref = std::find_if(trace.begin(), trace.end(), [&](const ErrorSample& s) {
        return std::abs(s.time - reference_time) <= 1e-9 * std::max(1.0, std::abs(reference_time));
    });
    if (ref == trace.end()) throw InputError("reference time is not a recorded time of the trace");
    const double level = factor * ref->error;
    for (auto it = ref + 1; it != trace.end(); ++it) {
        if (it->error > level) return it->time;
    }
    return std::nullopt;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::incomplete: return "incomplete";
    }
    return "incomplete";
}

GrowthResult run_growth(const SweepConfig& cfg, double reference_time, double factor, int jobs) {
    validate(cfg);
    if (cfg.eps_list.size() < 2) throw ConfigError("a growth comparison needs at least 2 eps values");
    if (!(reference_time > 0.0 && reference_time < cfg.T)) {
        throw ConfigError("reference_time must lie in (0, T)");
    }
    if (!(factor > 1.0)) throw ConfigError("horizon factor must exceed 1");

    GrowthResult result;
    result.entries.resize(cfg.eps_list.size());
    parallel_for(cfg.eps_list.size(), jobs, [&](std::size_t i) {
        GrowthEntry& entry = result.entries[i];
        entry.eps = cfg.eps_list[i];
        try {
            entry.trace = run_pair(entry.eps, cfg);
            try {
                entry.fit = fit_growth(entry.trace);
            } catch (const InsufficientDataError&) {
            }
            entry.horizon = validity_horizon(entry.trace, reference_time, factor);
            for (const auto& sample : entry.trace) {
                if (std::abs(sample.time - reference_time) <= 1e-9 * std::max(1.0, reference_time)) {
                    entry.reference_error = sample.error;
                }
            }
            entry.completed = true;
        } catch (const Error& e) {
            entry.failure = e.what();
        }
    });

    for (const auto& e : result.entries) {
        if (!e.completed) {
            result.verdict = Verdict::incomplete;
            result.reason = "eps " + shortest(e.eps) + " did not complete: " + e.failure;
            return result;
        }
    }
    result.verdict = Verdict::pass;
    for (std::size_t i = 1; i < result.entries.size(); ++i) {
        const auto& coarse = result.entries[i - 1];
        const auto& fine = result.entries[i];
        const std::string pair = "eps " + shortest(fine.eps) + " vs " + shortest(coarse.eps);
        if (!coarse.horizon && !fine.horizon) {
            result.verdict = Verdict::fail;
            result.reason = pair + ": neither error reached the threshold before T";
            return result;
        }
        if (!fine.horizon || (coarse.horizon && *fine.horizon > *coarse.horizon)) continue;
        result.verdict = Verdict::fail;
        result.reason = pair + ": horizon did not increase";
        return result;
    }
    result.reason = "horizons increase as eps decreases";
    return result;
}

namespace {

// modes * amplitude * e^{-i xi shift}, relabelled onto `grid` (same n).
Field translate_scale(const Field& f, const SpatialGrid& grid, double shift, double amplitude) {
    const auto& xi = grid.frequencies();
    std::vector<Complex> modes(f.spectral());
    const std::size_t nyquist = modes.size() / 2;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (j == nyquist) {
            modes[j] *= amplitude;
            continue;
        }
        modes[j] *= amplitude * std::polar(1.0, -xi[j] * shift);
    }
    return Field::from_spectral(grid, modes);
}

Field resample(const Field& f, const SpatialGrid& target) {
    const auto& source = f.grid();
    if (target.length() > source.length() * (1.0 + 1e-12)) {
        throw InterpolationError("target grid does not fit inside one period of the profile");
    }
    const double target_nyquist = target.max_abs_frequency();
    const auto& xi = source.frequencies();
    const auto& modes = f.spectral();
    double total = 0.0, lost = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double p = std::norm(modes[j]);
        total += p;
        if (std::abs(xi[j]) >= target_nyquist) lost += p;
    }
    if (total > 0.0 && std::sqrt(lost / total) > 1e-10) {
        throw InterpolationError("target grid under-resolves the compressed profile");
    }
    const std::size_t n = source.size();
    const std::size_t nyquist = n / 2;
    std::vector<double> samples(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const double y = target.x(i) - source.origin();
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == nyquist) {
                acc += modes[j].real() * std::cos(xi[j] * y);
            } else {
                acc += (modes[j] * std::polar(1.0, xi[j] * y)).real();
            }
        }
        samples[i] = acc / static_cast<double>(n);
    }
    return Field::from_physical(target, std::move(samples));
}

void check_scale(double value, const char* what) {
    if (!(value > 0.0 && value <= 1.0)) throw ConfigError(std::string(what) + " must lie in (0, 1]");
}

}  // namespace

Trace rescale_to_physical(const Trace& w_trace, double alpha, Frame frame,
                          const std::optional<SpatialGrid>& target) {
    check_scale(alpha, "alpha");
    Trace out;
    out.reserve(w_trace.size());
    for (const auto& snap : w_trace) {
        const auto& grid = snap.field.grid();
        if (frame == Frame::normalized) {
            const double root = std::sqrt(alpha);
            const SpatialGrid physical = make_grid(grid.size(), grid.length() / root);
            const double t = snap.time / (alpha * root);
            Field mapped = translate_scale(snap.field, physical, t, alpha);
            out.push_back({t, target ? resample(mapped, *target) : std::move(mapped)});
        } else {
            const double t = snap.time / alpha;
            Field mapped = translate_scale(snap.field, grid, t, 1.0);
            out.push_back({t, target ? resample(mapped, *target) : std::move(mapped)});
        }
    }
    return out;
}

Trace unscale_to_rescaled(const Trace& u_trace, double eps, Frame frame,
                          const std::vector<double>& requested_times) {
    check_scale(eps, "eps");
    const double alpha = eps * eps;
    Trace all;
    all.reserve(u_trace.size());
    for (const auto& snap : u_trace) {
        const auto& grid = snap.field.grid();
        if (frame == Frame::normalized) {
            const SpatialGrid rescaled = make_grid(grid.size(), grid.length() * eps);
            // Undo the physical-frame translation on the physical grid first.
            const Field back = translate_scale(snap.field, grid, -snap.time, 1.0 / alpha);
            all.push_back({snap.time * alpha * eps, Field::from_spectral(rescaled, back.spectral())});
        } else {
            all.push_back({snap.time * alpha, translate_scale(snap.field, grid, -snap.time, 1.0)});
        }
    }
    if (requested_times.empty()) return all;

    Trace picked;
    for (double tau : requested_times) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const Snapshot& s) {
            return std::abs(s.time - tau) <= 1e-9 * std::max(1.0, std::abs(tau));
        });
        if (it == all.end()) throw InputError("requested time " + shortest(tau) + " is not in the trace");
        picked.push_back(*it);
    }
    return picked;
}

void check_admissible(double q, double r) {
    if (!(q > 6.0) || !std::isfinite(q) || !(r >= 2.0) || !std::isfinite(r) ||
        std::abs(3.0 / q + 1.0 / r - 0.5) > 1e-12) {
        throw ConfigError("(q, r) is not admissible: need 3/q + 1/r = 1/2, 6 < q < inf, 2 <= r < inf");
    }
}

double strichartz_ratio_for(const Field& u0, double eps, double q, double r, const StrichartzConfig& cfg) {
    check_admissible(q, r);
    check_scale(eps, "eps");
    if (cfg.samples < 2 || !(cfg.window > 0.0)) throw ConfigError("Strichartz window needs >= 2 samples");
    const auto& grid = u0.grid();
    const auto& xi = grid.frequencies();
    const DispersionModel model = DispersionModel::bbm(eps);
    const double threshold = 1.0 / (5.0 * eps);
    const std::size_t nyquist = grid.size() / 2;

    std::vector<Complex> high(u0.spectral());
    for (std::size_t j = 0; j < high.size(); ++j) {
        if (std::abs(xi[j]) <= threshold || j == nyquist) high[j] = 0.0;
    }

    Trace trace;
    trace.reserve(static_cast<std::size_t>(cfg.samples));
    std::vector<Complex> modes(high.size());
    for (int i = 0; i < cfg.samples; ++i) {
        const double t = -cfg.window + 2.0 * cfg.window * i / (cfg.samples - 1);
        for (std::size_t j = 0; j < modes.size(); ++j) modes[j] = high[j] * std::polar(1.0, t * symbol(model, xi[j]));
        trace.push_back({t, Field::from_spectral(grid, modes)});
    }
    const double numerator = lp_tx_norm(trace, q, r);
    if (numerator == 0.0) return 0.0;

    const double order = 4.0 / q;
    double sum = 0.0;
    const auto& c = u0.spectral();
    for (std::size_t j = 0; j < c.size(); ++j) sum += std::pow(std::abs(xi[j]), 2.0 * order) * std::norm(c[j]);
    const double n = static_cast<double>(grid.size());
    const double denominator = std::pow(eps, order) * std::sqrt(sum * grid.length() / (n * n));
    return numerator / denominator;
}

std::vector<double> strichartz_ratio(double eps, double q, double r, int ensemble_size, std::uint64_t seed,
                                     const StrichartzConfig& cfg, int jobs) {
    check_admissible(q, r);
    if (ensemble_size < 1) throw ConfigError("ensemble size must be >= 1");
    const SpatialGrid grid = make_grid(cfg.n, cfg.length);
    std::vector<double> ratios(static_cast<std::size_t>(ensemble_size));
    parallel_for(ratios.size(), jobs, [&](std::size_t i) {
        RandomData data;
        data.s = cfg.s;
        data.seed = seed;
        data.stream = i;
        ratios[i] = strichartz_ratio_for(generate(data, grid), eps, q, r, cfg);
    });
    return ratios;
}

}  // namespace bbmlab
