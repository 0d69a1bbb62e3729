#pragma once

#include "core/audio/f0_track.hpp"
#include "core/dsp/profile.hpp"

#include <vector>

namespace nws::dsp {

// Resamples 10 ms labels onto the profile's hop grid by nearest label center.
// Frame t's center sits at (sample_offset + t*hop)/sample_rate (matching the
// centered STFT; a nonzero offset aligns a cropped window against labels for
// the whole track); label i's center at (i + 0.5)*10 ms. Values are copied,
// never interpolated, so voicing boundaries stay sharp. Out-of-range frames
// clamp to the ends.
std::vector<float> align_f0_to_frames(const audio::F0Track& track, int n_frames,
                                      const FeatureProfile& profile,
                                      long long sample_offset = 0);

// Each frame value repeated hop times; length = frames * hop.
std::vector<float> upsample_f0_replicate(const std::vector<float>& frame_f0, int hop);

} // namespace nws::dsp
