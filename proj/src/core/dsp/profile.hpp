#pragma once

#include <string>

namespace nws::dsp {

// The two built-in analysis configurations. TS targets 24 kHz audio with a
// 5 ms hop; FT targets 22.05 kHz with a 256-sample hop and an 8 kHz mel
// ceiling. Both produce 80 mel coefficients from a 1024-point Hann STFT.
struct FeatureProfile {
    std::string name;
    int sample_rate = 0;
    int hop = 0;
    int fft_size = 0;
    int win_length = 0;
    int n_mels = 0;
    double fmin_hz = 0.0;
    double fmax_hz = 0.0;

    int bins() const { return fft_size / 2 + 1; }
};

const FeatureProfile& profile_ts();
const FeatureProfile& profile_ft();

// Accepts "TS" or "FT"; fails otherwise.
const FeatureProfile& parse_profile(const std::string& name);

} // namespace nws::dsp
