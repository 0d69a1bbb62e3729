#pragma once

#include "core/audio/waveform.hpp"
#include "core/dsp/profile.hpp"

#include <complex>
#include <vector>

namespace nws::dsp {

struct Stft {
    int frames = 0;
    int bins = 0; // fft_size / 2 + 1
    std::vector<std::complex<double>> data; // row-major frames x bins

    std::complex<double> at(int t, int k) const {
        return data[static_cast<std::size_t>(t) * bins + k];
    }
};

// Centered short-time transform: frame t is the Hann-windowed slice around
// sample t*hop of the reflection-padded signal, so frames = ceil(len / hop)
// regardless of content. Window is periodic Hann of win_length, zero-padded
// to fft_size when shorter.
Stft stft(const audio::Waveform& w, const FeatureProfile& profile);

// Mirror-extends around the signal edges without repeating the edge sample;
// a one-sample signal extends as a constant.
std::size_t reflect_index(long long pos, std::size_t len);

} // namespace nws::dsp
