#pragma once

#include <cmath>
#include <vector>

namespace nws::dsp {

// Periodic Hann window (sum = n/2 for even n).
inline std::vector<double> hann_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
    return w;
}

// Symmetric Hamming window of odd length for FIR design.
inline std::vector<double> hamming_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
    return w;
}

} // namespace nws::dsp
