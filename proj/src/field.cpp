#include "bbmlab/field.hpp"

#include <algorithm>
#include <cmath>

#include "bbmlab/errors.hpp"
#include "bbmlab/fft.hpp"

namespace bbmlab {

Field::Field(SpatialGrid grid)
    : grid_(std::move(grid)), physical_(grid_.size(), 0.0), spectral_(grid_.size()) {}

Field::Field(SpatialGrid grid, std::vector<double> physical, std::vector<Complex> spectral)
    : grid_(std::move(grid)), physical_(std::move(physical)), spectral_(std::move(spectral)) {}

Field Field::from_physical(SpatialGrid grid, std::vector<double> samples) {
    if (samples.size() != grid.size()) {
        throw InputError("sample count does not match grid size");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) throw NumericalDataError("non-finite sample in field data");
    }
    auto modes = fft::forward_real(samples);
    return Field(std::move(grid), std::move(samples), std::move(modes));
}

Field Field::from_spectral(SpatialGrid grid, const std::vector<Complex>& modes) {
    if (modes.size() != grid.size()) {
        throw InputError("mode count does not match grid size");
    }
    for (const auto& c : modes) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw NumericalDataError("non-finite spectral mode");
        }
    }
    auto herm = fft::hermitian_part(modes);
    auto samples = fft::inverse_real(herm);
    return Field(std::move(grid), std::move(samples), std::move(herm));
}

Field Field::from_function(SpatialGrid grid, const std::function<double(double)>& f) {
    std::vector<double> samples(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) samples[j] = f(grid.x(j));
    return from_physical(std::move(grid), std::move(samples));
}

Complex Field::mode(long k) const {
    const long n = static_cast<long>(grid_.size());
    if (k < -n / 2 || k >= n / 2) throw InputError("mode index out of range");
    return spectral_[static_cast<std::size_t>(k < 0 ? k + n : k)];
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : physical_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

Field combine(const Field& a, const Field& b, double sign) {
    if (a.grid() != b.grid()) throw InputError("fields live on different grids");
    std::vector<double> out(a.physical());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += sign * b.physical()[j];
    return Field::from_physical(a.grid(), std::move(out));
}

}  // namespace

Field operator+(const Field& a, const Field& b) { return combine(a, b, 1.0); }
Field operator-(const Field& a, const Field& b) { return combine(a, b, -1.0); }

Field Field::scaled(double c) const {
    std::vector<double> phys(physical_);
    for (auto& v : phys) v *= c;
    std::vector<Complex> modes(spectral_);
    for (auto& m : modes) m *= c;
    return Field(grid_, std::move(phys), std::move(modes));
}

Field operator*(double c, const Field& f) { return f.scaled(c); }

}  // namespace bbmlab
