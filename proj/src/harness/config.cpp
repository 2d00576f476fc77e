#include "bbmlab/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bbmlab/errors.hpp"
#include "bbmlab/grid.hpp"

namespace bbmlab::harness {
namespace {

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw ConfigError(path + ": expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ConfigError(join(path, key) + ": unknown key");
    }
}

template <typename T>
void read(const YAML::Node& node, const std::string& key, const std::string& path, T& out) {
    const auto child = node[key];
    if (!child) return;
    try {
        out = child.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(join(path, key) + ": cannot parse value '" + YAML::Dump(child) + "'");
    }
}

void read_pairs(const YAML::Node& node, const std::string& key, const std::string& path, const char* first,
                const char* second, std::vector<std::pair<double, double>>& out) {
    const auto child = node[key];
    if (!child) return;
    const std::string here = join(path, key);
    if (!child.IsSequence()) throw ConfigError(here + ": expected a list");
    out.clear();
    for (std::size_t i = 0; i < child.size(); ++i) {
        const std::string item = here + "[" + std::to_string(i) + "]";
        check_keys(child[i], item, {first, second});
        double a = NAN, b = NAN;
        read(child[i], first, item, a);
        read(child[i], second, item, b);
        if (std::isnan(a) || std::isnan(b)) throw ConfigError(item + ": needs both " + first + " and " + second);
        out.emplace_back(a, b);
    }
}

InitialData read_initial_data(const YAML::Node& node) {
    const std::string path = "initial_data";
    std::string kind = "sech2";
    read(node, "kind", path, kind);
    if (kind == "sech2") {
        check_keys(node, path, {"kind", "amplitude", "width", "center"});
        Sech2Data d;
        read(node, "amplitude", path, d.amplitude);
        read(node, "width", path, d.width);
        read(node, "center", path, d.center);
        return d;
    }
    if (kind == "soliton") {
        check_keys(node, path, {"kind", "speed", "center"});
        SolitonData d;
        read(node, "speed", path, d.speed);
        read(node, "center", path, d.center);
        return d;
    }
    if (kind == "random") {
        check_keys(node, path, {"kind", "s", "norm", "max_mode", "stream"});
        RandomData d;
        read(node, "s", path, d.s);
        read(node, "norm", path, d.norm);
        read(node, "max_mode", path, d.max_mode);
        read(node, "stream", path, d.stream);
        return d;
    }
    throw ConfigError("initial_data.kind: expected sech2, soliton or random, got '" + kind + "'");
}

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ConfigError(path + ": " + what);
}

void check_eps_list(const std::vector<double>& list, const std::string& path, std::size_t min_size) {
    require(list.size() >= min_size, path, "needs at least " + std::to_string(min_size) + " values");
    for (std::size_t i = 0; i < list.size(); ++i) {
        require(list[i] > 0.0 && list[i] <= 1.0, path + "[" + std::to_string(i) + "]", "must lie in (0, 1]");
        if (i > 0) require(list[i] < list[i - 1], path, "must be strictly decreasing");
    }
}

void check_grid(std::size_t n, double length, const std::string& path) {
    try {
        make_grid(n, length);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    ExperimentConfig cfg;
    if (root.IsNull()) {
        validate(cfg);
        return cfg;
    }
    check_keys(root, "", {"seed", "output", "grid", "model", "initial_data", "stepper", "simulate", "sweep", "growth",
                          "identity", "strichartz"});
    read(root, "seed", "", cfg.seed);
    read(root, "output", "", cfg.output);

    if (const auto n = root["grid"]) {
        check_keys(n, "grid", {"n", "length"});
        read(n, "n", "grid", cfg.grid.n);
        read(n, "length", "grid", cfg.grid.length);
    }
    if (const auto n = root["model"]) {
        check_keys(n, "model", {"kind", "eps"});
        read(n, "kind", "model", cfg.model.kind);
        read(n, "eps", "model", cfg.model.eps);
    }
    if (const auto n = root["initial_data"]) cfg.initial_data = read_initial_data(n);
    if (const auto n = root["stepper"]) {
        check_keys(n, "stepper", {"dt", "dealias", "record_every", "enforce_ceiling"});
        read(n, "dt", "stepper", cfg.stepper.dt);
        read(n, "dealias", "stepper", cfg.stepper.dealias);
        read(n, "record_every", "stepper", cfg.stepper.record_every);
        read(n, "enforce_ceiling", "stepper", cfg.stepper.enforce_ceiling);
    }
    if (const auto n = root["simulate"]) {
        check_keys(n, "simulate", {"T", "c_gn"});
        read(n, "T", "simulate", cfg.simulate.T);
        read(n, "c_gn", "simulate", cfg.simulate.c_gn);
    }
    if (const auto n = root["sweep"]) {
        check_keys(n, "sweep", {"eps_list", "s", "T", "perturbation", "dt_overrides", "synthetic"});
        read(n, "eps_list", "sweep", cfg.sweep.eps_list);
        read(n, "s", "sweep", cfg.sweep.s);
        read(n, "T", "sweep", cfg.sweep.T);
        read(n, "perturbation", "sweep", cfg.sweep.perturbation);
        read_pairs(n, "dt_overrides", "sweep", "eps", "dt", cfg.sweep.dt_overrides);
        read_pairs(n, "synthetic", "sweep", "eps", "error", cfg.sweep.synthetic);
    }
    if (const auto n = root["growth"]) {
        check_keys(n, "growth", {"eps_list", "T", "reference_time", "factor"});
        read(n, "eps_list", "growth", cfg.growth.eps_list);
        read(n, "T", "growth", cfg.growth.T);
        read(n, "reference_time", "growth", cfg.growth.reference_time);
        read(n, "factor", "growth", cfg.growth.factor);
    }
    if (const auto n = root["identity"]) {
        check_keys(n, "identity", {"samples"});
        read(n, "samples", "identity", cfg.identity.samples);
    }
    if (const auto n = root["strichartz"]) {
        check_keys(n, "strichartz", {"eps_list", "q", "r", "ensemble_size", "window", "samples", "s", "n", "length",
                                     "uniformity"});
        auto& s = cfg.strichartz;
        read(n, "eps_list", "strichartz", s.eps_list);
        read(n, "q", "strichartz", s.q);
        read(n, "r", "strichartz", s.r);
        read(n, "ensemble_size", "strichartz", s.ensemble_size);
        read(n, "window", "strichartz", s.window);
        read(n, "samples", "strichartz", s.samples);
        read(n, "s", "strichartz", s.s);
        read(n, "n", "strichartz", s.n);
        read(n, "length", "strichartz", s.length);
        read(n, "uniformity", "strichartz", s.uniformity);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const ExperimentConfig& cfg) {
    check_grid(cfg.grid.n, cfg.grid.length, "grid");
    require(cfg.model.kind == "bbm" || cfg.model.kind == "kdv", "model.kind", "expected bbm or kdv");
    require(cfg.model.eps > 0.0 && cfg.model.eps <= 1.0, "model.eps", "must lie in (0, 1]");

    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sech2Data>) {
                require(std::isfinite(d.amplitude), "initial_data.amplitude", "must be finite");
                require(d.width > 0.0 && std::isfinite(d.width), "initial_data.width", "must be positive");
                require(std::isfinite(d.center), "initial_data.center", "must be finite");
            } else if constexpr (std::is_same_v<T, SolitonData>) {
                require(d.speed > 0.0 && std::isfinite(d.speed), "initial_data.speed", "must be positive");
                require(std::isfinite(d.center), "initial_data.center", "must be finite");
            } else {
                require(d.s >= 0.0 && std::isfinite(d.s), "initial_data.s", "must be non-negative");
                require(d.norm >= 0.0 && std::isfinite(d.norm), "initial_data.norm", "must be non-negative");
                require(d.max_mode >= 0, "initial_data.max_mode", "must be non-negative");
            }
        },
        cfg.initial_data);
    if (const auto* r = std::get_if<RandomData>(&cfg.initial_data)) {
        require(r->max_mode < static_cast<long>(cfg.grid.n / 2), "initial_data.max_mode",
                "must stay below the Nyquist mode n/2");
    }

    require(cfg.stepper.dt > 0.0 && std::isfinite(cfg.stepper.dt), "stepper.dt", "must be positive and finite");
    require(cfg.stepper.record_every >= 1, "stepper.record_every", "must be >= 1");

    require(std::isfinite(cfg.simulate.T), "simulate.T", "must be finite");
    require(cfg.simulate.c_gn > 0.0, "simulate.c_gn", "must be positive");

    check_eps_list(cfg.sweep.eps_list, "sweep.eps_list", 3);
    require(cfg.sweep.s >= 1.0 && cfg.sweep.s <= 5.0, "sweep.s", "must lie in [1, 5]");
    require(cfg.sweep.T > 0.0 && std::isfinite(cfg.sweep.T), "sweep.T", "must be positive and finite");
    require(cfg.sweep.perturbation >= 0.0, "sweep.perturbation", "must be non-negative");
    for (std::size_t i = 0; i < cfg.sweep.dt_overrides.size(); ++i) {
        require(cfg.sweep.dt_overrides[i].second > 0.0, "sweep.dt_overrides[" + std::to_string(i) + "].dt",
                "must be positive");
    }
    for (std::size_t i = 0; i < cfg.sweep.synthetic.size(); ++i) {
        const auto& [e, err] = cfg.sweep.synthetic[i];
        const std::string p = "sweep.synthetic[" + std::to_string(i) + "]";
        require(e > 0.0 && e <= 1.0, p + ".eps", "must lie in (0, 1]");
        require(err > 0.0, p + ".error", "must be positive");
    }
    require(cfg.sweep.synthetic.empty() || cfg.sweep.synthetic.size() >= 3, "sweep.synthetic",
            "needs at least 3 pairs");

    check_eps_list(cfg.growth.eps_list, "growth.eps_list", 2);
    require(cfg.growth.T > 0.0 && std::isfinite(cfg.growth.T), "growth.T", "must be positive and finite");
    require(cfg.growth.reference_time > 0.0 && cfg.growth.reference_time < cfg.growth.T, "growth.reference_time",
            "must lie in (0, T)");
    require(cfg.growth.factor > 1.0, "growth.factor", "must exceed 1");

    require(cfg.identity.samples >= 1, "identity.samples", "must be >= 1");

    const auto& s = cfg.strichartz;
    check_eps_list(s.eps_list, "strichartz.eps_list", 1);
    try {
        check_admissible(s.q, s.r);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("strichartz.q/r: ") + e.what());
    }
    require(s.ensemble_size >= 1, "strichartz.ensemble_size", "must be >= 1");
    require(s.window > 0.0, "strichartz.window", "must be positive");
    require(s.samples >= 2, "strichartz.samples", "must be >= 2");
    require(s.s >= 0.0, "strichartz.s", "must be non-negative");
    check_grid(s.n, s.length, "strichartz");
    require(s.uniformity > 0.0, "strichartz.uniformity", "must be positive");
}

namespace {

void emit_pairs(YAML::Emitter& out, const char* key, const char* first, const char* second,
                const std::vector<std::pair<double, double>>& pairs) {
    out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
    for (const auto& [a, b] : pairs) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << first << YAML::Value << a << YAML::Key << second
            << YAML::Value << b << YAML::EndMap;
    }
    out << YAML::EndSeq;
}

void emit_list(YAML::Emitter& out, const char* key, const std::vector<double>& values) {
    out << YAML::Key << key << YAML::Value << YAML::Flow << values;
}

}  // namespace

std::string to_yaml(const ExperimentConfig& cfg) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "seed" << YAML::Value << cfg.seed;
    out << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << cfg.output;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n" << YAML::Value << cfg.grid.n;
    out << YAML::Key << "length" << YAML::Value << cfg.grid.length;
    out << YAML::EndMap;

    out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << cfg.model.kind;
    out << YAML::Key << "eps" << YAML::Value << cfg.model.eps;
    out << YAML::EndMap;

    out << YAML::Key << "initial_data" << YAML::Value << YAML::BeginMap;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sech2Data>) {
                out << YAML::Key << "kind" << YAML::Value << "sech2";
                out << YAML::Key << "amplitude" << YAML::Value << d.amplitude;
                out << YAML::Key << "width" << YAML::Value << d.width;
                out << YAML::Key << "center" << YAML::Value << d.center;
            } else if constexpr (std::is_same_v<T, SolitonData>) {
                out << YAML::Key << "kind" << YAML::Value << "soliton";
                out << YAML::Key << "speed" << YAML::Value << d.speed;
                out << YAML::Key << "center" << YAML::Value << d.center;
            } else {
                out << YAML::Key << "kind" << YAML::Value << "random";
                out << YAML::Key << "s" << YAML::Value << d.s;
                out << YAML::Key << "norm" << YAML::Value << d.norm;
                out << YAML::Key << "max_mode" << YAML::Value << d.max_mode;
                out << YAML::Key << "stream" << YAML::Value << d.stream;
            }
        },
        cfg.initial_data);
    out << YAML::EndMap;

    out << YAML::Key << "stepper" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "dt" << YAML::Value << cfg.stepper.dt;
    out << YAML::Key << "dealias" << YAML::Value << cfg.stepper.dealias;
    out << YAML::Key << "record_every" << YAML::Value << cfg.stepper.record_every;
    out << YAML::Key << "enforce_ceiling" << YAML::Value << cfg.stepper.enforce_ceiling;
    out << YAML::EndMap;

    out << YAML::Key << "simulate" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "T" << YAML::Value << cfg.simulate.T;
    out << YAML::Key << "c_gn" << YAML::Value << cfg.simulate.c_gn;
    out << YAML::EndMap;

    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    emit_list(out, "eps_list", cfg.sweep.eps_list);
    out << YAML::Key << "s" << YAML::Value << cfg.sweep.s;
    out << YAML::Key << "T" << YAML::Value << cfg.sweep.T;
    out << YAML::Key << "perturbation" << YAML::Value << cfg.sweep.perturbation;
    emit_pairs(out, "dt_overrides", "eps", "dt", cfg.sweep.dt_overrides);
    emit_pairs(out, "synthetic", "eps", "error", cfg.sweep.synthetic);
    out << YAML::EndMap;

    out << YAML::Key << "growth" << YAML::Value << YAML::BeginMap;
    emit_list(out, "eps_list", cfg.growth.eps_list);
    out << YAML::Key << "T" << YAML::Value << cfg.growth.T;
    out << YAML::Key << "reference_time" << YAML::Value << cfg.growth.reference_time;
    out << YAML::Key << "factor" << YAML::Value << cfg.growth.factor;
    out << YAML::EndMap;

    out << YAML::Key << "identity" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "samples" << YAML::Value << cfg.identity.samples;
    out << YAML::EndMap;

    const auto& s = cfg.strichartz;
    out << YAML::Key << "strichartz" << YAML::Value << YAML::BeginMap;
    emit_list(out, "eps_list", s.eps_list);
    out << YAML::Key << "q" << YAML::Value << s.q;
    out << YAML::Key << "r" << YAML::Value << s.r;
    out << YAML::Key << "ensemble_size" << YAML::Value << s.ensemble_size;
    out << YAML::Key << "window" << YAML::Value << s.window;
    out << YAML::Key << "samples" << YAML::Value << s.samples;
    out << YAML::Key << "s" << YAML::Value << s.s;
    out << YAML::Key << "n" << YAML::Value << s.n;
    out << YAML::Key << "length" << YAML::Value << s.length;
    out << YAML::Key << "uniformity" << YAML::Value << s.uniformity;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

DispersionModel make_model(const ExperimentConfig& cfg) {
    return cfg.model.kind == "kdv" ? DispersionModel::kdv() : DispersionModel::bbm(cfg.model.eps);
}

namespace {

InitialData seeded(const ExperimentConfig& cfg) {
    InitialData data = cfg.initial_data;
    if (auto* r = std::get_if<RandomData>(&data)) r->seed = cfg.seed;
    return data;
}

SweepConfig base_sweep(const ExperimentConfig& cfg) {
    SweepConfig out;
    out.initial_data = seeded(cfg);
    out.n = cfg.grid.n;
    out.length = cfg.grid.length;
    out.dt = cfg.stepper.dt;
    out.record_every = cfg.stepper.record_every;
    out.dealias = cfg.stepper.dealias;
    out.enforce_ceiling = cfg.stepper.enforce_ceiling;
    out.seed = cfg.seed;
    return out;
}

}  // namespace

SweepConfig make_sweep_config(const ExperimentConfig& cfg) {
    SweepConfig out = base_sweep(cfg);
    out.eps_list = cfg.sweep.eps_list;
    out.s = cfg.sweep.s;
    out.T = cfg.sweep.T;
    out.perturbation = cfg.sweep.perturbation;
    out.dt_overrides = cfg.sweep.dt_overrides;
    return out;
}

SweepConfig make_growth_config(const ExperimentConfig& cfg) {
    SweepConfig out = base_sweep(cfg);
    out.eps_list = cfg.growth.eps_list;
    out.T = cfg.growth.T;
    return out;
}

StrichartzConfig make_strichartz_config(const ExperimentConfig& cfg) {
    const auto& s = cfg.strichartz;
    return {s.n, s.length, s.window, s.samples, s.s};
}

}  // namespace bbmlab::harness
