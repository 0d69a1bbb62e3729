#pragma once

#include "core/error.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace nws::dsp {

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT. n must be a power of two.
// inverse=true applies the conjugate transform and divides by n.
template <typename T>
void fft_inplace(std::complex<T>* a, int n, bool inverse) {
    if (!is_pow2(n))
        fail(ErrKind::invalid_arg, "fft size %d is not a power of two", n);

    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / len * (inverse ? 1.0 : -1.0);
        const std::complex<T> wl(static_cast<T>(std::cos(ang)), static_cast<T>(std::sin(ang)));
        for (int i = 0; i < n; i += len) {
            std::complex<T> w(1);
            for (int j = 0; j < len / 2; ++j) {
                std::complex<T> u = a[i + j];
                std::complex<T> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }

    if (inverse) {
        const T inv_n = static_cast<T>(1) / static_cast<T>(n);
        for (int i = 0; i < n; ++i) a[i] *= inv_n;
    }
}

template <typename T>
void fft_inplace(std::vector<std::complex<T>>& a, bool inverse) {
    fft_inplace(a.data(), static_cast<int>(a.size()), inverse);
}

} // namespace nws::dsp
