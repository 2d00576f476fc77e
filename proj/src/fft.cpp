#include "bbmlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "bbmlab/errors.hpp"

namespace bbmlab::fft {
namespace {

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are built once per size and never destroyed.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

const PlanPair& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto pair = std::make_unique<PlanPair>();
        std::vector<Complex> a(n), b(n);
        auto* in = reinterpret_cast<fftw_complex*>(a.data());
        auto* out = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        pair->forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
        pair->backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
        if (pair->forward == nullptr || pair->backward == nullptr) {
            throw Error("FFTW failed to create a plan");
        }
        slot = std::move(pair);
    }
    return *slot;
}

void execute(fftw_plan plan, std::span<const Complex> in, std::span<Complex> out) {
    if (in.size() != out.size()) throw InputError("fft: input and output sizes differ");
    if (in.data() == out.data()) {
        std::vector<Complex> copy(in.begin(), in.end());
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        return;
    }
    // FFTW does not modify the input of an out-of-place complex transform.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) {
    execute(plans_for(in.size()).forward, in, out);
}

void inverse(std::span<const Complex> in, std::span<Complex> out) {
    execute(plans_for(in.size()).backward, in, out);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& c : out) c *= scale;
}

std::vector<Complex> forward_real(std::span<const double> samples) {
    std::vector<Complex> in(samples.begin(), samples.end());
    std::vector<Complex> out(samples.size());
    forward(in, out);
    return out;
}

std::vector<double> inverse_real(std::span<const Complex> modes) {
    std::vector<Complex> out(modes.size());
    inverse(modes, out);
    std::vector<double> re(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j) re[j] = out[j].real();
    return re;
}

std::vector<Complex> hermitian_part(std::span<const Complex> modes) {
    const std::size_t n = modes.size();
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t partner = (n - j) % n;
        out[j] = 0.5 * (modes[j] + std::conj(modes[partner]));
    }
    return out;
}

}  // namespace bbmlab::fft
