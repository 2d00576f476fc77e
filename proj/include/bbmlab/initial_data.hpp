#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "bbmlab/field.hpp"

namespace bbmlab {

/// amplitude * sech^2((x - center) / width)
struct Sech2Data {
    double amplitude = 1.0;
    double width = 1.0;
    double center = 0.0;
    bool operator==(const Sech2Data&) const = default;
};

/// KdV soliton (3c/2) sech^2(sqrt(c)/2 (x - center)) of w_t + w_xxx + (w^2)_x = 0.
struct SolitonData {
    double speed = 1.0;
    double center = 0.0;
    bool operator==(const SolitonData&) const = default;
};

/// Band-limited random real field: modes 1..max_mode drawn from a seeded
/// normal generator with amplitudes <xi>^{-s-1}, rescaled to H^s norm
/// `norm`. max_mode = 0 selects the two-thirds band of the grid.
struct RandomData {
    double s = 1.0;
    double norm = 1.0;
    long max_mode = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    bool operator==(const RandomData&) const = default;
};

using InitialData = std::variant<Sech2Data, SolitonData, RandomData>;

Field generate(const InitialData& spec, const SpatialGrid& grid);

std::string describe(const InitialData& spec);

/// Exact translated soliton profile at time t.
double soliton_profile(double speed, double center, double x, double t);

}  // namespace bbmlab
