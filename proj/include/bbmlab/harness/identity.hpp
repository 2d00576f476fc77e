#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bbmlab::harness {

struct IdentityResidual {
    std::string name;
    std::string description;
    double max_residual = 0.0;
    double tolerance = 0.0;
    double worst_eps = 0.0;
    double worst_xi = 0.0;
    double worst_xi1 = 0.0;
    bool pass() const { return max_residual <= tolerance; }
};

struct IdentityReport {
    std::uint64_t seed = 0;
    long samples = 0;
    std::vector<IdentityResidual> identities;
    bool pass() const;
};

/// Evaluates the closed-form symbol identities over `samples` seeded draws
/// with eps log-uniform in [1e-3, 1] and xi, xi1 uniform in [-10/eps, 10/eps].
/// Throws ConfigError if samples < 1.
IdentityReport run_identity_check(std::uint64_t seed, long samples);

}  // namespace bbmlab::harness
