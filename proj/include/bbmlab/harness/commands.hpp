#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bbmlab::harness {

/// Stable process exit statuses.
enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitUsage = 2,  ///< usage, configuration or input error
    kExitIncomplete = 3,
};

struct CommandOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;  ///< overrides the config seed
    std::optional<std::string> out;     ///< overrides the config output directory
    int jobs = 1;
    std::optional<long> samples;        ///< identity-check sample count
    std::optional<std::string> input;   ///< plotdata input directory
};

int cmd_simulate(const CommandOptions& opts);
int cmd_sweep(const CommandOptions& opts);
int cmd_growth(const CommandOptions& opts);
int cmd_identity_check(const CommandOptions& opts);
int cmd_strichartz(const CommandOptions& opts);
int cmd_plotdata(const CommandOptions& opts);

/// Dispatches by subcommand name and maps library errors to exit codes,
/// printing the message to stderr.
int run_command(const std::string& name, const CommandOptions& opts);

const char* version();

}  // namespace bbmlab::harness
