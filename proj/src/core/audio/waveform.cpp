#include "core/audio/waveform.hpp"

#include "core/error.hpp"

namespace nws::audio {

std::vector<Waveform> segment_track(const Waveform& w, double max_seconds) {
    if (max_seconds <= 0.0)
        fail(ErrKind::invalid_arg, "segment length must be positive, got %g", max_seconds);
    if (w.sample_rate <= 0)
        fail(ErrKind::invalid_arg, "waveform has no sample rate");

    const std::size_t seg_len =
        static_cast<std::size_t>(max_seconds * w.sample_rate + 1e-9);
    if (seg_len == 0)
        fail(ErrKind::invalid_arg, "segment length shorter than one sample");

    std::vector<Waveform> out;
    std::size_t pos = 0;
    while (pos < w.samples.size()) {
        const std::size_t n = std::min(seg_len, w.samples.size() - pos);
        Waveform seg;
        seg.sample_rate = w.sample_rate;
        seg.samples.assign(w.samples.begin() + static_cast<std::ptrdiff_t>(pos),
                           w.samples.begin() + static_cast<std::ptrdiff_t>(pos + n));
        out.push_back(std::move(seg));
        pos += n;
    }
    if (out.empty()) {
        // Zero-length input still yields one empty segment so callers see the track.
        Waveform seg;
        seg.sample_rate = w.sample_rate;
        out.push_back(std::move(seg));
    }
    return out;
}

} // namespace nws::audio
