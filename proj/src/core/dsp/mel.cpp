#include "core/dsp/mel.hpp"

#include "core/dsp/stft.hpp"
#include "core/error.hpp"
#include "core/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace nws::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> mel_filterbank(const FeatureProfile& p) {
    const double nyquist = p.sample_rate / 2.0;
    if (!(p.fmin_hz >= 0.0 && p.fmin_hz < p.fmax_hz && p.fmax_hz <= nyquist))
        fail(ErrKind::invalid_arg, "mel band [%g, %g] invalid for rate %d", p.fmin_hz,
             p.fmax_hz, p.sample_rate);

    // n_mels + 2 uniformly spaced mel points; point i+1 is filter i's center,
    // its neighbors are the triangle feet.
    const int n = p.n_mels;
    std::vector<double> freqs(n + 2);
    const double mel_lo = hz_to_mel(p.fmin_hz);
    const double mel_hi = hz_to_mel(p.fmax_hz);
    for (int i = 0; i < n + 2; ++i)
        freqs[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n + 1));
    for (int i = 0; i < n; ++i)
        if (!(freqs[i + 2] > freqs[i]))
            fail(ErrKind::invalid_arg, "mel band too narrow for %d filters", n);

    const int bins = p.bins();
    std::vector<double> fb(static_cast<std::size_t>(n) * bins, 0.0);
    for (int k = 0; k < bins; ++k) {
        const double f = static_cast<double>(k) * p.sample_rate / p.fft_size;
        for (int i = 0; i < n; ++i) {
            const double lo = freqs[i], mid = freqs[i + 1], hi = freqs[i + 2];
            double wgt = 0.0;
            if (f >= lo && f <= mid && mid > lo) wgt = (f - lo) / (mid - lo);
            else if (f > mid && f <= hi && hi > mid) wgt = (hi - f) / (hi - mid);
            fb[static_cast<std::size_t>(i) * bins + k] = wgt;
        }
    }
    // A filter whose triangle falls between FFT bins contributes nothing; the
    // band cannot support this many filters at this resolution.
    for (int i = 0; i < n; ++i) {
        bool any = false;
        for (int k = 0; k < bins && !any; ++k)
            any = fb[static_cast<std::size_t>(i) * bins + k] > 0.0;
        if (!any)
            fail(ErrKind::invalid_arg, "mel band too narrow for %d filters at fft size %d", n,
                 p.fft_size);
    }
    return fb;
}

MelSpectrogram mel_spectrogram(const audio::Waveform& w, const FeatureProfile& p) {
    if (w.sample_rate != p.sample_rate)
        fail(ErrKind::mismatch, "waveform rate %d does not match profile %s rate %d (resample first)",
             w.sample_rate, p.name.c_str(), p.sample_rate);

    const Stft s = stft(w, p);
    const std::vector<double> fb = mel_filterbank(p);
    constexpr double kFloor = 1e-5;

    MelSpectrogram mel;
    mel.frames = s.frames;
    mel.dims = p.n_mels;
    mel.profile = p.name;
    mel.data.resize(static_cast<std::size_t>(s.frames) * p.n_mels);
    std::vector<double> mag(s.bins);
    for (int t = 0; t < s.frames; ++t) {
        for (int k = 0; k < s.bins; ++k) mag[k] = std::abs(s.at(t, k));
        for (int i = 0; i < p.n_mels; ++i) {
            double acc = 0.0;
            const double* row = fb.data() + static_cast<std::size_t>(i) * s.bins;
            for (int k = 0; k < s.bins; ++k) acc += row[k] * mag[k];
            mel.at(t, i) = static_cast<float>(std::log(std::max(acc, kFloor)));
        }
    }
    return mel;
}

void save_mel(const MelSpectrogram& mel, const std::string& path) {
    ByteBuf buf;
    buf.put_raw("MEL0", 4);
    buf.put_u32(static_cast<uint32_t>(mel.frames));
    buf.put_u32(static_cast<uint32_t>(mel.dims));
    buf.put_str(mel.profile);
    buf.put_raw(mel.data.data(), mel.data.size() * sizeof(float));
    write_file_bytes(path, buf.bytes());
}

MelSpectrogram load_mel(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    ByteCursor cur(bytes, path);
    char magic[4];
    cur.raw(magic, 4, "magic");
    if (std::memcmp(magic, "MEL0", 4) != 0)
        fail(ErrKind::format, "%s: not a MEL0 file", path.c_str());

    MelSpectrogram mel;
    mel.frames = static_cast<int>(cur.u32("frame count"));
    mel.dims = static_cast<int>(cur.u32("dim count"));
    mel.profile = cur.str("profile name");
    if (mel.frames < 0 || mel.dims <= 0)
        fail(ErrKind::format, "%s: bad dimensions %d x %d", path.c_str(), mel.frames, mel.dims);
    mel.data.resize(static_cast<std::size_t>(mel.frames) * mel.dims);
    cur.raw(mel.data.data(), mel.data.size() * sizeof(float), "feature data");
    return mel;
}

} // namespace nws::dsp
