#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gcslab {

bool is_power_of_two(std::size_t n);

/// Iterative radix-2 FFT with precomputed twiddle factors and bit-reversal
/// table. One instance serves one transform size; instances are cheap and are
/// not shared between concurrently running propagations.
class Radix2Fft {
public:
    explicit Radix2Fft(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// In-place DFT, sum_j x_j exp(-2 pi i j k / n). No scaling.
    void forward(std::span<std::complex<double>> data) const;

    /// In-place inverse DFT, scaled by 1/n so inverse(forward(x)) == x.
    void inverse(std::span<std::complex<double>> data) const;

private:
    void transform(std::span<std::complex<double>> data, bool inv) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;  // exp(-2 pi i j / n), j < n/2
};

}  // namespace gcslab
