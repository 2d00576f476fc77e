#pragma once

#include <cstddef>
#include <vector>

namespace bbmlab {

/// Uniform periodic grid on [-length/2, length/2).
///
/// Wavenumbers are stored in DFT order: k = 0, 1, ..., n/2-1, -n/2, ..., -1,
/// with xi_k = 2 pi k / length.
class SpatialGrid {
public:
    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }
    double origin() const noexcept { return -0.5 * length_; }

    double x(std::size_t j) const noexcept { return origin() + spacing() * static_cast<double>(j); }
    std::vector<double> points() const;

    /// Integer mode index of DFT slot `j`.
    long mode_index(std::size_t j) const noexcept {
        const long jj = static_cast<long>(j);
        const long half = static_cast<long>(n_ / 2);
        return jj < half ? jj : jj - static_cast<long>(n_);
    }
    const std::vector<double>& frequencies() const noexcept { return xi_; }
    double frequency(std::size_t j) const noexcept { return xi_[j]; }
    double max_abs_frequency() const noexcept;

    /// Largest |k| kept by the two-thirds rule (3 * cutoff < n).
    long dealias_cutoff() const noexcept;

    /// Same size and the same length up to round-off (1e-13 relative).
    bool operator==(const SpatialGrid& other) const noexcept;
    bool operator!=(const SpatialGrid& other) const noexcept { return !(*this == other); }

private:
    friend SpatialGrid make_grid(std::size_t n, double length);
    SpatialGrid(std::size_t n, double length);

    std::size_t n_;
    double length_;
    std::vector<double> xi_;
};

/// Throws ConfigError unless n is a power of two >= 8 and length > 0.
SpatialGrid make_grid(std::size_t n, double length);

}  // namespace bbmlab
