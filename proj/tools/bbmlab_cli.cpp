#include <iostream>

#include "CLI11.hpp"

#include "bbmlab/harness/commands.hpp"

using bbmlab::harness::CommandOptions;

int main(int argc, char** argv) {
    CLI::App app{"BBM / KdV pseudo-spectral laboratory"};
    app.set_version_flag("--version", std::string(bbmlab::harness::version()));
    app.require_subcommand(1);
    app.fallthrough();

    CommandOptions opts;
    std::string config, out;
    std::uint64_t seed = 0;
    long samples = 0;
    std::string input;
    app.add_option("--config", config, "experiment YAML file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "seed overriding the config");
    app.add_option("--out", out, "output directory overriding the config");
    app.add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);

    app.add_subcommand("simulate", "evolve one model and write trace, invariants and sidecar");
    app.add_subcommand("sweep", "BBM/KdV error sweep over eps with a power-law fit");
    app.add_subcommand("growth", "long-time error growth and validity horizons");
    auto* identity = app.add_subcommand("identity-check", "check the closed-form symbol identities");
    identity->add_option("--samples", samples, "number of random samples");
    app.add_subcommand("strichartz", "Strichartz ratio ensembles");
    auto* plot = app.add_subcommand("plotdata", "emit two-column plot data from a run directory");
    plot->add_option("input", input, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bbmlab::harness::kExitUsage;
    }

    if (!config.empty()) opts.config_path = config;
    if (app.count("--seed")) opts.seed = seed;
    if (!out.empty()) opts.out = out;
    if (identity->count("--samples")) opts.samples = samples;
    if (!input.empty()) opts.input = input;

    const auto* sub = app.get_subcommands().front();
    return bbmlab::harness::run_command(sub->get_name(), opts);
}
