#include "bbmlab/initial_data.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "bbmlab/errors.hpp"
#include "bbmlab/spectral.hpp"

namespace bbmlab {
namespace {

double sech2(double y) {
    const double c = std::cosh(y);
    return 1.0 / (c * c);
}

Field random_field(const RandomData& spec, const SpatialGrid& grid) {
    const long band = spec.max_mode > 0 ? spec.max_mode : grid.dealias_cutoff();
    if (band >= static_cast<long>(grid.size() / 2)) {
        throw ConfigError("random data band must stay below the Nyquist mode");
    }
    if (!(spec.norm >= 0.0)) throw ConfigError("random data norm must be non-negative");
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(spec.stream),
                      static_cast<std::uint32_t>(spec.stream >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t n = grid.size();
    std::vector<Complex> modes(n);
    for (long k = 1; k <= band; ++k) {
        const double xi = grid.frequency(static_cast<std::size_t>(k));
        const double a = std::pow(1.0 + xi * xi, -0.5 * (spec.s + 1.0));
        const double re = normal(rng);
        const double im = normal(rng);
        const Complex c = a * Complex(re, im);
        modes[static_cast<std::size_t>(k)] = c;
        modes[n - static_cast<std::size_t>(k)] = std::conj(c);
    }
    Field raw = Field::from_spectral(grid, modes);
    const double current = sobolev_norm(raw, spec.s);
    if (current == 0.0) return raw;
    return raw.scaled(spec.norm / current);
}

}  // namespace

double soliton_profile(double speed, double center, double x, double t) {
    return 1.5 * speed * sech2(0.5 * std::sqrt(speed) * (x - center - speed * t));
}

Field generate(const InitialData& spec, const SpatialGrid& grid) {
    return std::visit(
        [&](const auto& d) -> Field {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sech2Data>) {
                if (!(d.width > 0.0)) throw ConfigError("sech2 width must be positive");
                return Field::from_function(grid, [d](double x) {
                    return d.amplitude * sech2((x - d.center) / d.width);
                });
            } else if constexpr (std::is_same_v<T, SolitonData>) {
                if (!(d.speed > 0.0)) throw ConfigError("soliton speed must be positive");
                return Field::from_function(grid, [d](double x) {
                    return soliton_profile(d.speed, d.center, x, 0.0);
                });
            } else {
                return random_field(d, grid);
            }
        },
        spec);
}

std::string describe(const InitialData& spec) {
    std::ostringstream out;
    out.precision(17);
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sech2Data>) {
                out << "sech2(amplitude=" << d.amplitude << ", width=" << d.width << ", center=" << d.center << ")";
            } else if constexpr (std::is_same_v<T, SolitonData>) {
                out << "soliton(speed=" << d.speed << ", center=" << d.center << ")";
            } else {
                out << "random(s=" << d.s << ", norm=" << d.norm << ", max_mode=" << d.max_mode
                    << ", seed=" << d.seed << ", stream=" << d.stream << ")";
            }
        },
        spec);
    return out.str();
}

}  // namespace bbmlab
