#pragma once

#include "core/dsp/window.hpp"
#include "core/error.hpp"

#include <cmath>
#include <vector>

namespace nws::models {

// Hamming-windowed sinc low-pass with unit DC gain; reference design used by
// the differentiable per-frame filter below and directly testable.
std::vector<double> sinc_lowpass_taps(double cutoff_hz, int sample_rate, int n_taps);

// Spectral complement: delta at the center tap minus the low-pass.
std::vector<double> sinc_highpass_taps(double cutoff_hz, int sample_rate, int n_taps);

// Frame-wise FIR whose cutoff comes from the per-frame MVF track and whose
// coefficients are differentiable with respect to it. Each hop-length segment
// of the signal is filtered with that frame's taps (frame-constant filtering);
// signal edges are zero padded.
//
// With a = 2*cutoff/sample_rate and u = m - center, the unnormalized low-pass
// is h[m] = w[m] * a * sinc(a*u) whose derivative in a is w[m]*cos(pi*a*u);
// normalization to unit tap sum and the high-pass complement chain through by
// the quotient rule.
template <class T>
class FrameSincFilter {
public:
    FrameSincFilter(int n_taps, int hop, int sample_rate, bool highpass)
        : taps_(n_taps), hop_(hop), rate_(sample_rate), highpass_(highpass) {
        if (n_taps < 3 || n_taps % 2 == 0)
            fail(ErrKind::invalid_arg, "sinc filter needs an odd tap count >= 3, got %d", n_taps);
    }

    std::vector<T> forward(const std::vector<T>& x, const std::vector<T>& mvf_frames) {
        const std::size_t frames = mvf_frames.size();
        if (x.size() != frames * static_cast<std::size_t>(hop_))
            fail(ErrKind::mismatch, "sinc filter: %zu samples vs %zu frames * hop %d", x.size(),
                 frames, hop_);
        x_ = x;
        h_.assign(frames * taps_, T(0));
        dh_.assign(frames * taps_, T(0));

        const std::vector<double> win = dsp::hamming_window(taps_);
        const int c = (taps_ - 1) / 2;
        for (std::size_t t = 0; t < frames; ++t) {
            const double a = 2.0 * static_cast<double>(mvf_frames[t]) / rate_;
            double sum = 0.0;
            std::vector<double> raw(taps_), draw(taps_);
            for (int m = 0; m < taps_; ++m) {
                const double u = m - c;
                const double pau = 3.14159265358979323846 * a * u;
                raw[m] = win[m] * (u == 0.0 ? a : std::sin(pau) / (3.14159265358979323846 * u));
                draw[m] = win[m] * std::cos(pau);
                sum += raw[m];
            }
            double dsum = 0.0;
            for (int m = 0; m < taps_; ++m) dsum += draw[m];
            T* ht = h_.data() + t * taps_;
            T* dht = dh_.data() + t * taps_;
            for (int m = 0; m < taps_; ++m) {
                // Quotient rule for H = raw/sum; dH includes the chain factor
                // da/dmvf = 2/rate.
                double H = raw[m] / sum;
                double dH = (draw[m] * sum - raw[m] * dsum) / (sum * sum) * (2.0 / rate_);
                if (highpass_) {
                    H = (m == c ? 1.0 : 0.0) - H;
                    dH = -dH;
                }
                ht[m] = static_cast<T>(H);
                dht[m] = static_cast<T>(dH);
            }
        }

        std::vector<T> y(x.size(), T(0));
        apply(x, y);
        return y;
    }

    // Writes d(loss)/dx into gx (same length as x) and d(loss)/dmvf into gmvf
    // (one per frame), replacing their contents.
    void backward(const std::vector<T>& gy, std::vector<T>& gx, std::vector<T>& gmvf) {
        const std::size_t n = x_.size();
        const std::size_t frames = h_.size() / taps_;
        const int c = (taps_ - 1) / 2;
        gx.assign(n, T(0));
        gmvf.assign(frames, T(0));
        for (std::size_t t = 0; t < frames; ++t) {
            const T* ht = h_.data() + t * taps_;
            const T* dht = dh_.data() + t * taps_;
            T gm = T(0);
            for (std::size_t off = 0; off < static_cast<std::size_t>(hop_); ++off) {
                const std::size_t i = t * hop_ + off;
                const T g = gy[i];
                if (g == T(0)) continue;
                for (int m = 0; m < taps_; ++m) {
                    const long long src = static_cast<long long>(i) + c - m;
                    if (src < 0 || src >= static_cast<long long>(n)) continue;
                    gx[static_cast<std::size_t>(src)] += g * ht[m];
                    gm += g * dht[m] * x_[static_cast<std::size_t>(src)];
                }
            }
            gmvf[t] = gm;
        }
    }

private:
    void apply(const std::vector<T>& x, std::vector<T>& y) const {
        const std::size_t n = x.size();
        const std::size_t frames = h_.size() / taps_;
        const int c = (taps_ - 1) / 2;
        for (std::size_t t = 0; t < frames; ++t) {
            const T* ht = h_.data() + t * taps_;
            for (std::size_t off = 0; off < static_cast<std::size_t>(hop_); ++off) {
                const std::size_t i = t * hop_ + off;
                T acc = T(0);
                for (int m = 0; m < taps_; ++m) {
                    const long long src = static_cast<long long>(i) + c - m;
                    if (src < 0 || src >= static_cast<long long>(n)) continue;
                    acc += ht[m] * x[static_cast<std::size_t>(src)];
                }
                y[i] = acc;
            }
        }
    }

    int taps_, hop_, rate_;
    bool highpass_;
    std::vector<T> x_, h_, dh_;
};

} // namespace nws::models
