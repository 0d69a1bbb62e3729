#include "core/dsp/rainbowgram.hpp"

#include "core/dsp/png.hpp"
#include "core/dsp/stft.hpp"
#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

namespace nws::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMagEps = 1e-9; // below this, phase is numeric noise
} // namespace

Rainbowgram rainbowgram(const audio::Waveform& w, const FeatureProfile& profile) {
    const Stft s = stft(w, profile);
    const double bin_hz = static_cast<double>(profile.sample_rate) / profile.fft_size;
    const double nyquist = profile.sample_rate / 2.0;

    Rainbowgram rg;
    rg.frames = s.frames;
    rg.bins = s.bins;
    rg.sample_rate = profile.sample_rate;
    rg.magnitude.resize(s.data.size());
    rg.inst_freq_hz.resize(s.data.size());

    for (int t = 0; t < s.frames; ++t) {
        for (int k = 0; k < s.bins; ++k) {
            const std::size_t idx = static_cast<std::size_t>(t) * s.bins + k;
            const double mag = std::abs(s.at(t, k));
            rg.magnitude[idx] = mag;

            double f = k * bin_hz;
            if (t > 0) {
                const double prev_mag = std::abs(s.at(t - 1, k));
                if (mag > kMagEps && prev_mag > kMagEps) {
                    const double dphi = std::arg(s.at(t, k)) - std::arg(s.at(t - 1, k));
                    const double expected = 2.0 * kPi * k * profile.hop / profile.fft_size;
                    const double dev = std::remainder(dphi - expected, 2.0 * kPi);
                    f += dev * profile.sample_rate / (2.0 * kPi * profile.hop);
                }
            }
            rg.inst_freq_hz[idx] = std::clamp(f, 0.0, nyquist);
        }
    }
    return rg;
}

void write_rainbowgram_csv(const Rainbowgram& rg, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrKind::io, "cannot write rainbowgram csv: %s", path.c_str());
    out << "frame,bin,magnitude,inst_freq_hz\n";
    char buf[96];
    for (int t = 0; t < rg.frames; ++t) {
        for (int k = 0; k < rg.bins; ++k) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.6g,%.6g\n", t, k, rg.mag(t, k),
                          rg.freq(t, k));
            out << buf;
        }
    }
    if (!out) fail(ErrKind::io, "short write: %s", path.c_str());
}

namespace {

void hsv_to_rgb(double h, double s, double v, uint8_t* rgb) {
    h = h - std::floor(h); // [0,1)
    const double c = v * s;
    const double hp = h * 6.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = v - c;
    rgb[0] = static_cast<uint8_t>(std::lround(255.0 * (r + m)));
    rgb[1] = static_cast<uint8_t>(std::lround(255.0 * (g + m)));
    rgb[2] = static_cast<uint8_t>(std::lround(255.0 * (b + m)));
}

} // namespace

void write_rainbowgram_png(const Rainbowgram& rg, const std::string& path) {
    if (rg.frames == 0 || rg.bins == 0)
        fail(ErrKind::invalid_arg, "rainbowgram is empty");

    double max_mag = 0.0;
    for (double m : rg.magnitude) max_mag = std::max(max_mag, m);
    if (max_mag <= 0.0) max_mag = 1.0;
    const double floor_db = -80.0;

    const int width = rg.frames;
    const int height = rg.bins;
    std::vector<uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
    const double nyquist = rg.sample_rate / 2.0;
    const double bin_hz = rg.bins > 1 ? nyquist / (rg.bins - 1) : nyquist;
    for (int k = 0; k < rg.bins; ++k) {
        const int y = height - 1 - k; // low frequencies at the bottom
        const double center = k * bin_hz;
        for (int t = 0; t < rg.frames; ++t) {
            const double db = 20.0 * std::log10(std::max(rg.mag(t, k) / max_mag, 1e-12));
            const double v = std::clamp(1.0 - db / floor_db, 0.0, 1.0);
            // Hue encodes how far the bin's instantaneous frequency sits from
            // the bin center, in units of bin spacing; on-center bins are cyan.
            const double dev = std::clamp((rg.freq(t, k) - center) / bin_hz, -4.0, 4.0);
            const double hue = 0.5 + dev / 10.0;
            hsv_to_rgb(hue, 0.85, v, &pixels[(static_cast<std::size_t>(y) * width + t) * 3]);
        }
    }
    write_png_rgb(path, width, height, pixels);
}

} // namespace nws::dsp
