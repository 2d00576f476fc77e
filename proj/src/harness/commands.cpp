#include "bbmlab/harness/commands.hpp"

#include <cmath>
#include <iostream>
#include <map>

#include "bbmlab/errors.hpp"
#include "bbmlab/evolve.hpp"
#include "bbmlab/harness/config.hpp"
#include "bbmlab/harness/identity.hpp"
#include "bbmlab/harness/io.hpp"
#include "bbmlab/invariants.hpp"
#include "bbmlab/limit_lab.hpp"
#include "bbmlab/spectral.hpp"

#ifndef BBMLAB_VERSION
#define BBMLAB_VERSION "0.0.0"
#endif

namespace bbmlab::harness {

const char* version() { return BBMLAB_VERSION; }

namespace {

ExperimentConfig effective_config(const CommandOptions& opts, bool required) {
    ExperimentConfig cfg;
    if (opts.config_path) {
        cfg = load_config(*opts.config_path);
    } else if (required) {
        throw ConfigError("--config is required for this command");
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.out) cfg.output = *opts.out;
    return cfg;
}

fs::path output_dir(const ExperimentConfig& cfg) {
    if (cfg.output.empty()) throw ConfigError("output: no output directory (set output or pass --out)");
    const fs::path dir(cfg.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

RunManifest start_manifest(const std::string& command, const ExperimentConfig& cfg) {
    RunManifest m;
    m.command = command;
    m.config_hash = sha256_hex(to_yaml(cfg));
    m.seed = cfg.seed;
    m.version = version();
    m.started = utc_timestamp();
    return m;
}

int finish(RunManifest& m, const fs::path& dir, int code, const std::string& status) {
    m.exit_code = code;
    m.status = status;
    m.finished = utc_timestamp();
    m.write(dir);
    return code;
}

std::string eps_dir_name(double eps) { return "eps_" + format_double(eps); }

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json drift_json(const DriftReport& d) {
    return Json{{"e0", d.e0}, {"e1", d.e1}, {"e2", d.e2}, {"max", d.max()}};
}

}  // namespace

int cmd_simulate(const CommandOptions& opts) {
    const auto cfg = effective_config(opts, true);
    const auto grid = make_grid(cfg.grid.n, cfg.grid.length);
    const auto model = make_model(cfg);
    InitialData data = cfg.initial_data;
    if (auto* r = std::get_if<RandomData>(&data)) r->seed = cfg.seed;
    const Field u0 = generate(data, grid);

    const double ceiling = stability_ceiling(u0);
    if (cfg.stepper.enforce_ceiling && cfg.stepper.dt > ceiling) {
        throw ConfigError("stepper.dt: " + format_double(cfg.stepper.dt) + " exceeds the stability ceiling " +
                          format_double(ceiling));
    }
    const fs::path dir = output_dir(cfg);
    write_text(dir / "config.yaml", to_yaml(cfg));
    auto manifest = start_manifest("simulate", cfg);
    manifest.files.push_back("config.yaml");

    StepperConfig stepper{cfg.stepper.dt, cfg.stepper.dealias, true, cfg.stepper.record_every,
                          cfg.stepper.enforce_ceiling};
    std::optional<EvolutionResult> result;
    try {
        result = evolve_to({model, 0.0, u0, 0}, cfg.simulate.T, stepper);
    } catch (const BlowUpError& e) {
        manifest.warnings.push_back(e.what());
        std::cerr << "blow-up: " << e.what() << "\n";
        return finish(manifest, dir, kExitIncomplete, "blow-up");
    }
    const EvolutionResult& run = *result;

    write_trace_csv(dir / "trace.csv", run.trace);
    write_invariants_csv(dir / "invariants.csv", run.invariant_log);
    manifest.files.insert(manifest.files.end(), {"trace.csv", "invariants.csv"});

    const double R = sobolev_norm(u0, 1.0);
    const double h1_ceiling = R > 0.0 ? h1_apriori_ceiling(R, cfg.simulate.c_gn) : 0.0;
    const auto h1 = R > 0.0 ? monitor_h1(run.trace, h1_ceiling) : H1MonitorResult{};

    Json sidecar;
    sidecar["model"] = model.name();
    sidecar["grid"] = {{"n", grid.size()}, {"length", grid.length()}};
    sidecar["cfg"] = {{"dt", cfg.stepper.dt},
                      {"dealias", cfg.stepper.dealias},
                      {"record_every", cfg.stepper.record_every},
                      {"T", cfg.simulate.T},
                      {"initial_data", describe(data)},
                      {"stability_ceiling", nullable(ceiling)}};
    Json log = Json::array();
    for (const auto& rec : run.invariant_log) {
        log.push_back({{"t", rec.time}, {"e0", rec.values.e0}, {"e1", rec.values.e1}, {"e2", rec.values.e2}});
    }
    sidecar["invariant_log"] = log;
    sidecar["invariants"] = drift_json(drift_report(run.invariant_log));
    sidecar["warnings"] = run.warnings;
    sidecar["h1_monitor"] = {{"R", R},
                             {"c_gn", cfg.simulate.c_gn},
                             {"ceiling", h1_ceiling},
                             {"sup_h1", h1.sup_h1},
                             {"worst_ratio", h1.worst_ratio},
                             {"time_of_worst", h1.time_of_worst},
                             {"pass", h1.pass}};
    write_json(dir / "run.json", sidecar);
    manifest.files.push_back("run.json");
    manifest.warnings = run.warnings;

    std::cout << "simulate: " << model.name() << " to t = " << format_double(run.state.time)
              << ", max drift " << format_double(drift_report(run.invariant_log).max()) << "\n";
    return h1.pass ? finish(manifest, dir, kExitPass, "pass") : finish(manifest, dir, kExitFail, "fail");
}

int cmd_sweep(const CommandOptions& opts) {
    const auto cfg = effective_config(opts, true);
    const fs::path dir = output_dir(cfg);
    write_text(dir / "config.yaml", to_yaml(cfg));
    auto manifest = start_manifest("sweep", cfg);
    manifest.files.push_back("config.yaml");

    SweepResult result;
    if (!cfg.sweep.synthetic.empty()) {
        result = synthetic_sweep(cfg.sweep.synthetic, cfg.sweep.s);
    } else {
        result = run_sweep(make_sweep_config(cfg), opts.jobs);
        for (const auto& e : result.entries) {
            const fs::path sub = dir / eps_dir_name(e.eps);
            fs::create_directories(sub);
            if (e.completed) {
                write_error_csv(sub / "errors.csv", e.trace);
                manifest.files.push_back((fs::path(eps_dir_name(e.eps)) / "errors.csv").string());
            } else {
                write_text(sub / "failure.txt", e.failure + "\n");
                manifest.files.push_back((fs::path(eps_dir_name(e.eps)) / "failure.txt").string());
                manifest.warnings.push_back(e.failure);
            }
        }
    }

    CsvWriter csv(dir / "sweep.csv", {"eps", "sup_error", "t_of_sup"});
    for (const auto& e : result.entries) {
        if (e.completed) csv.row({e.eps, e.sup_error, e.t_of_sup});
    }
    csv.close();
    manifest.files.push_back("sweep.csv");

    const int code = !result.complete ? kExitIncomplete : result.rate_pass ? kExitPass : kExitFail;
    const std::string verdict = !result.complete ? "incomplete" : result.rate_pass ? "pass" : "fail";
    Json fit;
    if (result.fit) {
        fit["slope"] = result.fit->slope;
        fit["intercept"] = result.fit->intercept;
        fit["r_squared"] = nullable(result.fit->r_squared);
    } else {
        fit["slope"] = nullptr;
        fit["intercept"] = nullptr;
        fit["r_squared"] = nullptr;
    }
    fit["threshold"] = result.threshold;
    fit["s"] = cfg.sweep.s;
    fit["synthetic"] = !cfg.sweep.synthetic.empty();
    fit["complete"] = result.complete;
    fit["strictly_decreasing"] = result.strictly_decreasing;
    fit["verdict"] = verdict;
    Json entries = Json::array();
    for (const auto& e : result.entries) {
        Json j{{"eps", e.eps}, {"completed", e.completed}};
        if (e.completed) {
            j["sup_error"] = e.sup_error;
            j["t_of_sup"] = e.t_of_sup;
        } else {
            j["failure"] = e.failure;
        }
        entries.push_back(j);
    }
    fit["entries"] = entries;
    write_json(dir / "fit.json", fit);
    manifest.files.push_back("fit.json");

    std::cout << "sweep: slope " << (result.fit ? format_double(result.fit->slope) : std::string("n/a"))
              << ", threshold " << format_double(result.threshold) << ", " << verdict << "\n";
    return finish(manifest, dir, code, verdict);
}

int cmd_growth(const CommandOptions& opts) {
    const auto cfg = effective_config(opts, true);
    const fs::path dir = output_dir(cfg);
    write_text(dir / "config.yaml", to_yaml(cfg));
    auto manifest = start_manifest("growth", cfg);
    manifest.files.push_back("config.yaml");

    const auto result =
        run_growth(make_growth_config(cfg), cfg.growth.reference_time, cfg.growth.factor, opts.jobs);
    Json entries = Json::array();
    for (const auto& e : result.entries) {
        const std::string name = eps_dir_name(e.eps);
        fs::create_directories(dir / name);
        Json j{{"eps", e.eps}, {"completed", e.completed}};
        if (e.completed) {
            write_error_csv(dir / name / "growth.csv", e.trace);
            manifest.files.push_back((fs::path(name) / "growth.csv").string());
            j["k_hat"] = e.fit ? Json(e.fit->k_hat) : Json(nullptr);
            j["c_hat"] = e.fit ? Json(e.fit->c_hat) : Json(nullptr);
            j["reference_error"] = e.reference_error;
            j["validity_horizon"] = e.horizon ? Json(*e.horizon) : Json(nullptr);
            j["final_error"] = e.trace.back().error;
        } else {
            j["failure"] = e.failure;
            manifest.warnings.push_back(e.failure);
        }
        write_json(dir / name / "growth.json", j);
        manifest.files.push_back((fs::path(name) / "growth.json").string());
        entries.push_back(j);
    }
    const std::string verdict = to_string(result.verdict);
    Json summary{{"reference_time", cfg.growth.reference_time},
                 {"factor", cfg.growth.factor},
                 {"T", cfg.growth.T},
                 {"verdict", verdict},
                 {"reason", result.reason},
                 {"entries", entries}};
    write_json(dir / "growth.json", summary);
    manifest.files.push_back("growth.json");

    std::cout << "growth: " << verdict << " (" << result.reason << ")\n";
    const int code = result.verdict == Verdict::pass   ? kExitPass
                     : result.verdict == Verdict::fail ? kExitFail
                                                       : kExitIncomplete;
    return finish(manifest, dir, code, verdict);
}

int cmd_identity_check(const CommandOptions& opts) {
    const auto cfg = effective_config(opts, false);
    const long samples = opts.samples ? *opts.samples : cfg.identity.samples;
    if (samples < 1) throw ConfigError("identity.samples: sample_count must be >= 1");
    const auto report = run_identity_check(cfg.seed, samples);

    Json j{{"seed", report.seed}, {"samples", report.samples}, {"pass", report.pass()}};
    Json ids = Json::array();
    for (const auto& r : report.identities) {
        ids.push_back({{"name", r.name},
                       {"description", r.description},
                       {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass()},
                       {"worst_sample", {{"eps", r.worst_eps}, {"xi", r.worst_xi}, {"xi1", r.worst_xi1}}}});
        std::cout << (r.pass() ? "PASS " : "FAIL ") << r.name << " max residual "
                  << format_double(r.max_residual) << " (tol " << format_double(r.tolerance) << ")\n";
    }
    j["identities"] = ids;
    const int code = report.pass() ? kExitPass : kExitFail;
    if (!cfg.output.empty()) {
        const fs::path dir = output_dir(cfg);
        write_json(dir / "report.json", j);
        auto manifest = start_manifest("identity-check", cfg);
        manifest.files.push_back("report.json");
        return finish(manifest, dir, code, report.pass() ? "pass" : "fail");
    }
    return code;
}

int cmd_strichartz(const CommandOptions& opts) {
    const auto cfg = effective_config(opts, false);
    const auto& sc = cfg.strichartz;
    const fs::path dir = output_dir(cfg);
    write_text(dir / "config.yaml", to_yaml(cfg));
    auto manifest = start_manifest("strichartz", cfg);
    manifest.files.push_back("config.yaml");
    const auto scfg = make_strichartz_config(cfg);

    CsvWriter csv(dir / "strichartz.csv", {"eps", "member", "ratio"});
    Json per_eps = Json::array();
    std::vector<double> maxima;
    for (double eps : sc.eps_list) {
        const auto ratios = strichartz_ratio(eps, sc.q, sc.r, sc.ensemble_size, cfg.seed, scfg, opts.jobs);
        double mx = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            csv.row({eps, static_cast<double>(i), ratios[i]});
            mx = std::max(mx, ratios[i]);
            mean += ratios[i];
        }
        mean /= static_cast<double>(ratios.size());
        maxima.push_back(mx);
        per_eps.push_back({{"eps", eps}, {"max_ratio", mx}, {"mean_ratio", mean}});
    }
    csv.close();
    manifest.files.push_back("strichartz.csv");

    bool pass = true;
    Json checks = Json::array();
    for (std::size_t i = 1; i < maxima.size(); ++i) {
        const double growth = maxima[i - 1] > 0.0 ? maxima[i] / maxima[i - 1] : 0.0;
        const bool ok = maxima[i] <= sc.uniformity * maxima[i - 1];
        pass = pass && ok;
        checks.push_back({{"eps", sc.eps_list[i]}, {"previous_eps", sc.eps_list[i - 1]}, {"max_growth", growth},
                          {"pass", ok}});
    }
    Json j{{"q", sc.q},     {"r", sc.r},       {"ensemble_size", sc.ensemble_size},
           {"window", sc.window}, {"samples", sc.samples}, {"uniformity", sc.uniformity},
           {"per_eps", per_eps}, {"checks", checks},       {"verdict", pass ? "pass" : "fail"}};
    write_json(dir / "strichartz.json", j);
    manifest.files.push_back("strichartz.json");
    std::cout << "strichartz: " << (pass ? "pass" : "fail") << "\n";
    return finish(manifest, dir, pass ? kExitPass : kExitFail, pass ? "pass" : "fail");
}

namespace {

void write_columns(const fs::path& path, const std::vector<std::pair<double, double>>& rows) {
    std::string text;
    for (const auto& [a, b] : rows) text += format_double(a) + " " + format_double(b) + "\n";
    write_text(path, text);
}

}  // namespace

int cmd_plotdata(const CommandOptions& opts) {
    if (!opts.input) throw ConfigError("plotdata needs an input run directory");
    const fs::path in(*opts.input);
    if (!fs::is_directory(in)) throw InputError("input directory " + in.string() + " does not exist");
    const fs::path out = opts.out ? fs::path(*opts.out) : in / "plots";

    std::vector<std::pair<fs::path, std::vector<std::pair<double, double>>>> files;

    if (fs::exists(in / "sweep.csv")) {
        const auto table = read_csv(in / "sweep.csv");
        const auto ce = table.column("eps"), cs = table.column("sup_error");
        std::vector<std::pair<double, double>> rows;
        for (const auto& r : table.rows) rows.emplace_back(r[ce], r[cs]);
        files.emplace_back("loglog.dat", rows);
        const auto fit = read_json(in / "fit.json");
        if (!fit.contains("slope") || !fit["slope"].is_number() || !fit["intercept"].is_number()) {
            throw InputError((in / "fit.json").string() + ": no fitted slope");
        }
        const double slope = fit["slope"].get<double>(), intercept = fit["intercept"].get<double>();
        std::vector<std::pair<double, double>> line;
        for (const auto& [e, err] : rows) line.emplace_back(e, std::exp(intercept) * std::pow(e, slope));
        files.emplace_back("loglog_fit.dat", line);
    }

    std::map<std::string, fs::path> eps_dirs;
    for (const auto& entry : fs::directory_iterator(in)) {
        const auto name = entry.path().filename().string();
        if (entry.is_directory() && name.rfind("eps_", 0) == 0) eps_dirs.emplace(name, entry.path());
    }
    for (const auto& [name, path] : eps_dirs) {
        const bool growth = fs::exists(path / "growth.csv");
        const fs::path csv = growth ? path / "growth.csv" : path / "errors.csv";
        if (!fs::exists(csv)) continue;
        const auto table = read_csv(csv);
        const auto ct = table.column("t"), ce = table.column("error");
        std::vector<std::pair<double, double>> rows;
        for (const auto& r : table.rows) rows.emplace_back(r[ct], r[ce]);
        files.emplace_back("error_vs_t_" + name + ".dat", rows);
        if (growth) {
            const auto g = read_json(path / "growth.json");
            if (g.contains("k_hat") && g["k_hat"].is_number()) {
                const double k = g["k_hat"].get<double>(), c = g["c_hat"].get<double>();
                std::vector<std::pair<double, double>> env;
                for (const auto& [t, e] : rows) env.emplace_back(t, c * std::exp(k * t));
                files.emplace_back("envelope_" + name + ".dat", env);
            }
        }
    }

    if (fs::exists(in / "invariants.csv")) {
        const auto table = read_csv(in / "invariants.csv");
        const std::size_t ct = table.column("t");
        const std::size_t cols[3] = {table.column("e0"), table.column("e1"), table.column("e2")};
        if (table.rows.empty()) throw InputError((in / "invariants.csv").string() + ": no rows");
        std::vector<std::pair<double, double>> rows;
        const auto& first = table.rows.front();
        for (const auto& r : table.rows) {
            double worst = 0.0;
            for (std::size_t c : cols) {
                worst = std::max(worst, std::abs(r[c] - first[c]) / std::max(std::abs(first[c]), 1e-14));
            }
            rows.emplace_back(r[ct], worst);
        }
        files.emplace_back("drift.dat", rows);
    }

    if (files.empty()) {
        throw InputError("no plottable inputs in " + in.string() +
                         " (expected sweep.csv, invariants.csv or eps_*/growth.csv)");
    }
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw InputError("cannot create output directory " + out.string());
    for (const auto& [name, rows] : files) write_columns(out / name, rows);
    std::cout << "plotdata: wrote " << files.size() << " files to " << out.string() << "\n";
    return kExitPass;
}

int run_command(const std::string& name, const CommandOptions& opts) {
    try {
        if (name == "simulate") return cmd_simulate(opts);
        if (name == "sweep") return cmd_sweep(opts);
        if (name == "growth") return cmd_growth(opts);
        if (name == "identity-check") return cmd_identity_check(opts);
        if (name == "strichartz") return cmd_strichartz(opts);
        if (name == "plotdata") return cmd_plotdata(opts);
        std::cerr << "error: unknown command '" << name << "'\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncomplete;
    }
}

}  // namespace bbmlab::harness
