#pragma once

#include "core/audio/waveform.hpp"
#include "core/dsp/profile.hpp"

#include <string>
#include <vector>

namespace nws::dsp {

struct Rainbowgram {
    int frames = 0;
    int bins = 0;
    int sample_rate = 0;
    std::vector<double> magnitude;    // row-major frames x bins
    std::vector<double> inst_freq_hz; // same layout, values in [0, sample_rate/2]

    double mag(int t, int k) const { return magnitude[static_cast<std::size_t>(t) * bins + k]; }
    double freq(int t, int k) const {
        return inst_freq_hz[static_cast<std::size_t>(t) * bins + k];
    }
};

// Per-bin instantaneous frequency from frame-to-frame phase advance: the
// deviation from the expected advance 2*pi*k*hop/fft is wrapped to (-pi, pi]
// and converted to Hz around the bin center. Frame 0, and any bin whose
// magnitude is below 1e-9 in either frame of the pair, reports the bin center.
Rainbowgram rainbowgram(const audio::Waveform& w, const FeatureProfile& profile);

// CSV with header frame,bin,magnitude,inst_freq_hz; one row per (frame, bin).
void write_rainbowgram_csv(const Rainbowgram& rg, const std::string& path);

// Heat map: hue from instantaneous-frequency deviation off the bin center,
// brightness from log magnitude.
void write_rainbowgram_png(const Rainbowgram& rg, const std::string& path);

} // namespace nws::dsp
