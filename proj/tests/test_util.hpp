#pragma once

#include "core/audio/f0_track.hpp"
#include "core/audio/manifest.hpp"
#include "core/audio/wav_io.hpp"
#include "core/audio/waveform.hpp"
#include "core/dsp/fft.hpp"
#include "core/io_util.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>
#include <vector>

namespace testutil {

// Unique scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0;; ++attempt) {
            auto candidate = base / ("nws-test-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(counter()++));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path = candidate;
                return;
            }
            if (attempt > 100) throw std::runtime_error("cannot create temp dir");
        }
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
};

inline bool same_bytes(const std::string& a, const std::string& b) {
    return nws::read_file_bytes(a) == nws::read_file_bytes(b);
}

inline nws::audio::Waveform make_tone(double freq_hz, double seconds, int rate,
                                      double amp = 0.5) {
    nws::audio::Waveform w;
    w.sample_rate = rate;
    const auto n = static_cast<std::size_t>(seconds * rate);
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.samples[i] = static_cast<float>(amp * std::sin(2.0 * M_PI * freq_hz * i / rate));
    return w;
}

inline nws::audio::F0Track constant_f0(float hz, double seconds) {
    nws::audio::F0Track t;
    t.values_hz.assign(static_cast<std::size_t>(seconds / 0.010), hz);
    return t;
}

// Plain O(n*k) transform of a real signal, the cross-check for FFT paths.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x, int n_out) {
    std::vector<std::complex<double>> out(n_out);
    const std::size_t n = x.size();
    for (int k = 0; k < n_out; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double ang = -2.0 * M_PI * k * static_cast<double>(i) / n;
            acc += x[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// Frequency of the strongest sinusoid via a zero-padded DFT peak with
// parabolic refinement on log magnitude.
inline double dominant_frequency(const std::vector<float>& x, int rate) {
    const int n = static_cast<int>(x.size());
    int fft = 1;
    while (fft < n * 4) fft *= 2;
    std::vector<std::complex<double>> spec(fft, {0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
        spec[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] * w;
    }
    nws::dsp::fft_inplace(spec.data(), fft, false);
    int peak = 1;
    for (int k = 2; k < fft / 2; ++k)
        if (std::abs(spec[k]) > std::abs(spec[peak])) peak = k;
    const double ym = std::log(std::abs(spec[peak - 1]) + 1e-30);
    const double y0 = std::log(std::abs(spec[peak]) + 1e-30);
    const double yp = std::log(std::abs(spec[peak + 1]) + 1e-30);
    const double denom = ym - 2.0 * y0 + yp;
    const double delta = denom == 0.0 ? 0.0 : 0.5 * (ym - yp) / denom;
    return (peak + delta) * static_cast<double>(rate) / fft;
}

// Frequency estimate from the mean distance between rising zero crossings.
inline double zero_crossing_freq(const std::vector<float>& x, int rate) {
    std::vector<std::size_t> ups;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] <= 0.0f && x[i] > 0.0f) ups.push_back(i);
    if (ups.size() < 2) return 0.0;
    const double span = static_cast<double>(ups.back() - ups.front());
    return static_cast<double>(rate) * (static_cast<double>(ups.size()) - 1.0) / span;
}

} // namespace testutil
