#pragma once

#include <cstddef>
#include <vector>

namespace nws::audio {

// Mono audio buffer, amplitudes in [-1, 1].
struct Waveform {
    std::vector<float> samples;
    int sample_rate = 0;

    std::size_t size() const { return samples.size(); }
    double seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// Cuts a track into consecutive pieces of at most max_seconds; every piece
// except the last has exactly the maximum length, and concatenating the
// pieces reproduces the input bit for bit.
std::vector<Waveform> segment_track(const Waveform& w, double max_seconds);

} // namespace nws::audio
