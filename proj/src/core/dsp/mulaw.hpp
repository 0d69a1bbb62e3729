#pragma once

#include "core/error.hpp"

#include <algorithm>
#include <cmath>

namespace nws::dsp {

constexpr int kMuLawCodes = 1024; // 10-bit
constexpr double kMu = 1023.0;

// Companding curve F(x) = sign(x) * ln(1 + mu*|x|) / ln(1 + mu), an odd
// monotone map of [-1, 1] onto itself.
inline double mu_law_compand(double x) {
    const double y = std::log1p(kMu * std::abs(x)) / std::log1p(kMu);
    return x < 0.0 ? -y : y;
}

inline double mu_law_expand(double y) {
    const double x = (std::pow(1.0 + kMu, std::abs(y)) - 1.0) / kMu;
    return y < 0.0 ? -x : x;
}

// Uniformly quantizes F(x) in [-1, 1] to 1024 cells; 0 maps to code 512,
// +1 to 1023.
inline int mu_law_encode(double x) {
    x = std::clamp(x, -1.0, 1.0);
    const double f = mu_law_compand(x);
    const int code = static_cast<int>(std::floor((f + 1.0) * 0.5 * kMuLawCodes));
    return std::clamp(code, 0, kMuLawCodes - 1);
}

// Inverse companding of the cell-center value.
inline double mu_law_decode(int code) {
    if (code < 0 || code >= kMuLawCodes)
        fail(ErrKind::invalid_arg, "mu-law code %d out of [0, %d]", code, kMuLawCodes - 1);
    const double center = (static_cast<double>(code) + 0.5) / (kMuLawCodes / 2.0) - 1.0;
    return mu_law_expand(center);
}

} // namespace nws::dsp
