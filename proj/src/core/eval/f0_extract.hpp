#pragma once

#include "core/audio/waveform.hpp"

#include <vector>

namespace nws::eval {

struct F0Estimate {
    std::vector<float> f0_hz;      // one value per 10 ms frame, 0 where unvoiced
    std::vector<float> confidence; // peak normalized autocorrelation per frame
    std::size_t frames() const { return f0_hz.size(); }
};

// Normalized-autocorrelation pitch tracker over 25 ms windows advancing by
// 10 ms, searching 40-2000 Hz. A frame is voiced when the best interior
// autocorrelation peak reaches the threshold; among peaks within 1.5% of the
// best the smallest lag wins (octave-down avoidance), then the lag is refined
// by parabolic interpolation. Frames whose window or lag reach would run past
// either edge of the signal are unvoiced. Rates below 8 kHz are rejected.
F0Estimate extract_f0(const audio::Waveform& w, double voicing_threshold = 0.3);

} // namespace nws::eval
