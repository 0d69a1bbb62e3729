#include "core/dsp/stft.hpp"

#include "core/dsp/fft.hpp"
#include "core/dsp/window.hpp"
#include "core/error.hpp"

namespace nws::dsp {

std::size_t reflect_index(long long pos, std::size_t len) {
    if (len == 1) return 0;
    const long long last = static_cast<long long>(len) - 1;
    long long p = pos;
    while (p < 0 || p > last) {
        if (p < 0) p = -p;
        if (p > last) p = 2 * last - p;
    }
    return static_cast<std::size_t>(p);
}

Stft stft(const audio::Waveform& w, const FeatureProfile& profile) {
    if (w.samples.empty()) fail(ErrKind::invalid_arg, "stft input is empty");
    if (profile.win_length > profile.fft_size)
        fail(ErrKind::invalid_arg, "win_length %d exceeds fft_size %d", profile.win_length,
             profile.fft_size);

    const int n_fft = profile.fft_size;
    const int hop = profile.hop;
    const int win = profile.win_length;
    const std::size_t len = w.samples.size();
    const int frames = static_cast<int>((len + hop - 1) / hop);
    const int pad = n_fft / 2;

    const std::vector<double> window = hann_window(win);

    Stft out;
    out.frames = frames;
    out.bins = profile.bins();
    out.data.resize(static_cast<std::size_t>(frames) * out.bins);

    std::vector<std::complex<double>> buf(n_fft);
    const int win_off = (n_fft - win) / 2;
    for (int t = 0; t < frames; ++t) {
        std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
        const long long frame_start = static_cast<long long>(t) * hop - pad;
        for (int i = 0; i < win; ++i) {
            const long long pos = frame_start + win_off + i;
            const double s = w.samples[reflect_index(pos, len)];
            buf[win_off + i] = s * window[i];
        }
        fft_inplace(buf.data(), n_fft, false);
        for (int k = 0; k < out.bins; ++k)
            out.data[static_cast<std::size_t>(t) * out.bins + k] = buf[k];
    }
    return out;
}

} // namespace nws::dsp
