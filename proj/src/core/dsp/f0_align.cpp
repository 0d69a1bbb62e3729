#include "core/dsp/f0_align.hpp"

#include "core/error.hpp"

#include <cmath>

namespace nws::dsp {

std::vector<float> align_f0_to_frames(const audio::F0Track& track, int n_frames,
                                      const FeatureProfile& profile, long long sample_offset) {
    if (n_frames < 0) fail(ErrKind::invalid_arg, "negative frame count %d", n_frames);
    if (n_frames == 0) return {};
    if (track.values_hz.empty())
        fail(ErrKind::invalid_arg, "cannot align an empty f0 track to %d frames", n_frames);

    std::vector<float> out(static_cast<std::size_t>(n_frames));
    const long long last = static_cast<long long>(track.size()) - 1;
    for (int t = 0; t < n_frames; ++t) {
        // Nearest label center (i + 0.5)*10ms to the frame center
        // (offset + t*hop)/rate, ties toward the later label. Solved in exact
        // integer arithmetic so boundary frames never wobble on rounding:
        // floor(center / 0.010) = floor(100 * (offset + t*hop) / rate).
        const long long num = 100 * (sample_offset + static_cast<long long>(t) * profile.hop);
        long long i = num / profile.sample_rate;
        if (num < 0 && num % profile.sample_rate != 0) --i; // floor, not truncation
        i = std::max(0LL, std::min(i, last));
        out[static_cast<std::size_t>(t)] = track.values_hz[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<float> upsample_f0_replicate(const std::vector<float>& frame_f0, int hop) {
    if (hop < 1) fail(ErrKind::invalid_arg, "hop must be >= 1, got %d", hop);
    std::vector<float> out;
    out.reserve(frame_f0.size() * static_cast<std::size_t>(hop));
    for (float v : frame_f0)
        out.insert(out.end(), static_cast<std::size_t>(hop), v);
    return out;
}

} // namespace nws::dsp
