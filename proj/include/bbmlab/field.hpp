#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bbmlab/grid.hpp"

namespace bbmlab {

using Complex = std::complex<double>;

/// A real-valued function sampled on a SpatialGrid.
///
/// Both representations are computed eagerly at construction, so a Field is
/// immutable and can be shared between threads. The spectral modes use the
/// unnormalized forward DFT (mode(0) = sum of samples) in DFT order.
class Field {
public:
    explicit Field(SpatialGrid grid);  // zero field

    /// Throws NumericalDataError on NaN/Inf samples.
    static Field from_physical(SpatialGrid grid, std::vector<double> samples);

    /// Keeps only the Hermitian part of `modes` so the field stays real.
    static Field from_spectral(SpatialGrid grid, const std::vector<Complex>& modes);

    static Field from_function(SpatialGrid grid, const std::function<double(double)>& f);

    const SpatialGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& physical() const noexcept { return physical_; }
    const std::vector<Complex>& spectral() const noexcept { return spectral_; }

    /// Mode with integer wavenumber index k in [-n/2, n/2).
    Complex mode(long k) const;

    double max_abs() const noexcept;

    /// Multiplies both representations by c (no transform round trip).
    Field scaled(double c) const;

private:
    Field(SpatialGrid grid, std::vector<double> physical, std::vector<Complex> spectral);

    SpatialGrid grid_;
    std::vector<double> physical_;
    std::vector<Complex> spectral_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& f);

}  // namespace bbmlab
