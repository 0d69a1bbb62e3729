#pragma once

#include "core/audio/waveform.hpp"
#include "core/dsp/profile.hpp"

#include <string>
#include <vector>

namespace nws::dsp {

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// n_mels x bins matrix of nonnegative triangular filters with unit peak,
// spaced uniformly in mel between fmin and fmax.
std::vector<double> mel_filterbank(const FeatureProfile& profile);

struct MelSpectrogram {
    int frames = 0;
    int dims = 0;
    std::string profile; // name of the profile the features were computed with
    std::vector<float> data; // row-major frames x dims, log magnitudes

    float at(int t, int d) const { return data[static_cast<std::size_t>(t) * dims + d]; }
    float& at(int t, int d) { return data[static_cast<std::size_t>(t) * dims + d]; }
};

// log(max(filterbank * |stft|, 1e-5)). The waveform must already be at the
// profile's rate; resampling is the caller's job.
MelSpectrogram mel_spectrogram(const audio::Waveform& w, const FeatureProfile& profile);

// Binary container: magic "MEL0", u32 frames, u32 dims, u32 name length,
// profile name bytes, then row-major float32 little-endian data.
void save_mel(const MelSpectrogram& mel, const std::string& path);
MelSpectrogram load_mel(const std::string& path);

} // namespace nws::dsp
