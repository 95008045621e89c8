#pragma once

#include "evlab/numcore.hpp"

#include <memory>
#include <span>
#include <vector>

namespace evlab {

/// Complex DFT of fixed length backed by FFTW.
///   forward:  X_k = sum_j x_j exp(-2 pi i jk/N)
///   inverse:  x_j = (1/N) sum_k X_k exp(+2 pi i jk/N)
/// Plans are created once; execution is safe from several threads on
/// distinct objects.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const noexcept { return n_; }

    std::vector<Complex> forward(std::span<const Complex> in) const;
    std::vector<Complex> inverse(std::span<const Complex> in) const;

    void forward_inplace(std::span<Complex> data) const;
    void inverse_inplace(std::span<Complex> data) const;

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

/// Angular frequency of DFT bin k for sample spacing dt, in FFT order
/// (0, 1, ..., N/2-1, -N/2, ..., -1) * 2 pi / (N dt).
double dft_angular_frequency(std::size_t k, std::size_t n, double dt);

}  // namespace evlab
