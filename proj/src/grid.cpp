#include "bbmlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bbmlab/errors.hpp"

namespace bbmlab {

SpatialGrid::SpatialGrid(std::size_t n, double length) : n_(n), length_(length), xi_(n) {
    for (std::size_t j = 0; j < n_; ++j) {
        xi_[j] = 2.0 * std::numbers::pi * static_cast<double>(mode_index(j)) / length_;
    }
}

std::vector<double> SpatialGrid::points() const {
    std::vector<double> out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
    return out;
}

double SpatialGrid::max_abs_frequency() const noexcept {
    // The unpaired mode -n/2 has the largest magnitude.
    return std::numbers::pi * static_cast<double>(n_) / length_;
}

long SpatialGrid::dealias_cutoff() const noexcept {
    long cutoff = static_cast<long>(n_ / 3);
    if (3 * cutoff >= static_cast<long>(n_)) --cutoff;
    return cutoff;
}

bool SpatialGrid::operator==(const SpatialGrid& other) const noexcept {
    return n_ == other.n_ &&
           std::abs(length_ - other.length_) <= 1e-13 * std::max(length_, other.length_);
}

SpatialGrid make_grid(std::size_t n, double length) {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError("grid length must be positive and finite");
    }
    return SpatialGrid(n, length);
}

}  // namespace bbmlab
