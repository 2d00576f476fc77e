#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbmlab/initial_data.hpp"
#include "bbmlab/limit_lab.hpp"
#include "bbmlab/symbols.hpp"

namespace bbmlab::harness {

struct GridSection {
    std::size_t n = 2048;
    double length = 80.0;
    bool operator==(const GridSection&) const = default;
};

struct ModelSection {
    std::string kind = "bbm";  ///< "bbm" or "kdv"
    double eps = 0.1;
    bool operator==(const ModelSection&) const = default;
};

struct StepperSection {
    double dt = 1e-3;
    bool dealias = true;
    int record_every = 10;
    bool enforce_ceiling = true;
    bool operator==(const StepperSection&) const = default;
};

struct SimulateSection {
    double T = 1.0;
    /// Gagliardo-Nirenberg constant for the H^1 monitor.
    double c_gn = kDefaultGagliardoNirenberg;
    bool operator==(const SimulateSection&) const = default;
};

struct SweepSection {
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    double s = 1.0;
    double T = 0.5;
    double perturbation = 0.0;
    std::vector<std::pair<double, double>> dt_overrides;  ///< (eps, dt)
    /// Injected (eps, error) pairs; when non-empty no PDE is solved.
    std::vector<std::pair<double, double>> synthetic;
    bool operator==(const SweepSection&) const = default;
};

struct GrowthSection {
    std::vector<double> eps_list{0.1, 0.05};
    double T = 20.0;
    double reference_time = 1.0;
    double factor = 10.0;
    bool operator==(const GrowthSection&) const = default;
};

struct IdentitySection {
    long samples = 10000;
    bool operator==(const IdentitySection&) const = default;
};

struct StrichartzSection {
    std::vector<double> eps_list{0.1, 0.05};
    double q = 18.0;
    double r = 3.0;
    int ensemble_size = 100;
    double window = 2.0;
    int samples = 401;
    double s = 1.0;
    std::size_t n = 1024;
    double length = 100.53096491487338;
    /// Allowed growth of the maximum ratio from one eps to the next.
    double uniformity = 1.25;
    bool operator==(const StrichartzSection&) const = default;
};

/// One experiment file. Sections that a command does not use keep their
/// defaults and are still validated.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::string output;  ///< default output directory; --out overrides
    GridSection grid;
    ModelSection model;
    InitialData initial_data = Sech2Data{};
    StepperSection stepper;
    SimulateSection simulate;
    SweepSection sweep;
    GrowthSection growth;
    IdentitySection identity;
    StrichartzSection strichartz;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses YAML text. Unknown keys and invalid values raise ConfigError with
/// the dotted field path in the message.
ExperimentConfig parse_config(const std::string& text);
/// Reads and parses a file; InputError if it cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Canonical YAML rendering; parse_config(to_yaml(c)) == c.
std::string to_yaml(const ExperimentConfig& cfg);
/// Checks every section; ConfigError names the offending field path.
void validate(const ExperimentConfig& cfg);

DispersionModel make_model(const ExperimentConfig& cfg);
SweepConfig make_sweep_config(const ExperimentConfig& cfg);
SweepConfig make_growth_config(const ExperimentConfig& cfg);
StrichartzConfig make_strichartz_config(const ExperimentConfig& cfg);

}  // namespace bbmlab::harness
