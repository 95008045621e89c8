#include "evlab/fft.hpp"

#include "evlab/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace evlab {

namespace {
// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft::Impl {
    fftw_complex* buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Impl(std::size_t n) {
        std::lock_guard lock(planner_mutex());
        buffer = fftw_alloc_complex(n);
        if (buffer == nullptr) throw NumericalError("Fft: allocation failed");
        const int len = static_cast<int>(n);
        forward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(buffer);
    }

    void run(fftw_plan plan, std::span<Complex> data) const {
        // std::complex<double> is layout-compatible with fftw_complex; the
        // new-array execute interface needs FFTW's alignment, so go through
        // the owned buffer.
        auto* raw = reinterpret_cast<Complex*>(buffer);
        std::copy(data.begin(), data.end(), raw);
        fftw_execute_dft(plan, buffer, buffer);
        std::copy(raw, raw + data.size(), data.begin());
    }
};

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("Fft: length must be positive");
    impl_ = std::make_unique<Impl>(n);
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward_inplace(std::span<Complex> data) const {
    if (data.size() != n_) throw DomainError("Fft: length mismatch");
    impl_->run(impl_->forward, data);
}

void Fft::inverse_inplace(std::span<Complex> data) const {
    if (data.size() != n_) throw DomainError("Fft: length mismatch");
    impl_->run(impl_->backward, data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& z : data) z *= scale;
}

std::vector<Complex> Fft::forward(std::span<const Complex> in) const {
    std::vector<Complex> out(in.begin(), in.end());
    forward_inplace(out);
    return out;
}

std::vector<Complex> Fft::inverse(std::span<const Complex> in) const {
    std::vector<Complex> out(in.begin(), in.end());
    inverse_inplace(out);
    return out;
}

double dft_angular_frequency(std::size_t k, std::size_t n, double dt) {
    const auto kk = static_cast<long long>(k);
    const auto nn = static_cast<long long>(n);
    const long long signed_k = kk < (nn + 1) / 2 ? kk : kk - nn;
    return 2.0 * kPi * static_cast<double>(signed_k) / (static_cast<double>(n) * dt);
}

}  // namespace evlab
