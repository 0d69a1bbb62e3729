#pragma once

#include "core/dsp/fft.hpp"
#include "core/dsp/window.hpp"
#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace nws::models {

struct StftLossConfig {
    int fft = 0;
    int hop = 0;
    int win = 0;
};

// The three analysis resolutions of the spectral training objective.
inline const std::vector<StftLossConfig>& multires_configs() {
    static const std::vector<StftLossConfig> cfgs = {
        {512, 80, 320}, {128, 40, 80}, {2048, 640, 1920}};
    return cfgs;
}

// Sum over resolutions of the mean squared log-magnitude difference between
// generated and target signals. Frames are non-centered (start 0, advance by
// hop while a full window fits; shorter signals get one zero-padded frame);
// magnitudes are floored at 1e-5 before the log. backward() returns
// d(loss)/d(generated); the target is a constant.
template <class T>
class MultiResStftLoss {
public:
    T forward(const std::vector<T>& gen, const std::vector<T>& target) {
        if (gen.size() != target.size())
            fail(ErrKind::mismatch, "stft loss: generated %zu vs target %zu samples", gen.size(),
                 target.size());
        if (gen.empty()) fail(ErrKind::invalid_arg, "stft loss: empty signals");
        gen_ = gen;
        target_ = target;
        double total = 0.0;
        for (const auto& cfg : multires_configs()) total += config_loss(cfg);
        return static_cast<T>(total);
    }

    std::vector<T> backward() {
        std::vector<double> gx(gen_.size(), 0.0);
        for (const auto& cfg : multires_configs()) config_backward(cfg, gx);
        std::vector<T> out(gx.size());
        for (std::size_t i = 0; i < gx.size(); ++i) out[i] = static_cast<T>(gx[i]);
        return out;
    }

private:
    static constexpr double kFloor = 1e-5;

    static int frame_count(const StftLossConfig& cfg, std::size_t n) {
        if (n < static_cast<std::size_t>(cfg.win)) return 1; // single zero-padded frame
        return static_cast<int>((n - cfg.win) / cfg.hop) + 1;
    }

    void frame_spectrum(const std::vector<T>& x, const StftLossConfig& cfg, int frame,
                        const std::vector<double>& win,
                        std::vector<std::complex<double>>& buf) const {
        buf.assign(cfg.fft, {0.0, 0.0});
        const std::size_t start = static_cast<std::size_t>(frame) * cfg.hop;
        for (int i = 0; i < cfg.win; ++i) {
            const std::size_t idx = start + i;
            if (idx >= x.size()) break;
            buf[i] = static_cast<double>(x[idx]) * win[i];
        }
        dsp::fft_inplace(buf.data(), cfg.fft, false);
    }

    double config_loss(const StftLossConfig& cfg) {
        const std::vector<double> win = dsp::hann_window(cfg.win);
        const int frames = frame_count(cfg, gen_.size());
        const int bins = cfg.fft / 2 + 1;
        std::vector<std::complex<double>> bg, bt;
        double acc = 0.0;
        for (int f = 0; f < frames; ++f) {
            frame_spectrum(gen_, cfg, f, win, bg);
            frame_spectrum(target_, cfg, f, win, bt);
            for (int k = 0; k < bins; ++k) {
                const double e = std::log(std::max(std::abs(bg[k]), kFloor)) -
                                 std::log(std::max(std::abs(bt[k]), kFloor));
                acc += e * e;
            }
        }
        return acc / (static_cast<double>(frames) * bins);
    }

    void config_backward(const StftLossConfig& cfg, std::vector<double>& gx) {
        const std::vector<double> win = dsp::hann_window(cfg.win);
        const int frames = frame_count(cfg, gen_.size());
        const int bins = cfg.fft / 2 + 1;
        const double norm = 1.0 / (static_cast<double>(frames) * bins);
        std::vector<std::complex<double>> bg, bt, grad(cfg.fft);
        for (int f = 0; f < frames; ++f) {
            frame_spectrum(gen_, cfg, f, win, bg);
            frame_spectrum(target_, cfg, f, win, bt);
            std::fill(grad.begin(), grad.end(), std::complex<double>(0.0, 0.0));
            for (int k = 0; k < bins; ++k) {
                const double mag = std::abs(bg[k]);
                if (mag <= kFloor) continue; // flat region of the floored log
                const double e = std::log(mag) - std::log(std::max(std::abs(bt[k]), kFloor));
                const double gmag = 2.0 * e * norm / mag;
                grad[k] = gmag * bg[k] / mag;
            }
            // gx[n] = sum_k gRe_k cos(2 pi k n / N) - gIm_k sin(...), which is
            // N * Re(IFFT(grad)) with the upper half of grad left zero.
            dsp::fft_inplace(grad.data(), cfg.fft, true);
            const std::size_t start = static_cast<std::size_t>(f) * cfg.hop;
            for (int i = 0; i < cfg.win; ++i) {
                const std::size_t idx = start + i;
                if (idx >= gx.size()) break;
                gx[idx] += cfg.fft * grad[i].real() * win[i];
            }
        }
    }

    std::vector<T> gen_, target_;
};

} // namespace nws::models
