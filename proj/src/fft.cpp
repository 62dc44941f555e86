#include "gcslab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace gcslab {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Radix2Fft::Radix2Fft(std::size_t n) : n_(n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("fft size must be a power of two");
    bitrev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
        bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double angle = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        twiddle_[j] = {std::cos(angle), std::sin(angle)};
    }
}

void Radix2Fft::transform(std::span<std::complex<double>> data, bool inv) const {
    if (data.size() != n_) throw std::invalid_argument("fft: data size mismatch");

    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t stride = n_ / len;
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                std::complex<double> w = twiddle_[k * stride];
                if (inv) w = std::conj(w);
                const std::complex<double> u = data[start + k];
                const std::complex<double> v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

void Radix2Fft::forward(std::span<std::complex<double>> data) const { transform(data, false); }

void Radix2Fft::inverse(std::span<std::complex<double>> data) const {
    transform(data, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : data) v *= scale;
}

}  // namespace gcslab
