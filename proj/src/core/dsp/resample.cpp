#include "core/dsp/resample.hpp"

#include "core/error.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace nws::dsp {

namespace {

constexpr int kHalfTaps = 32; // kernel support in source samples, each side
constexpr double kPi = 3.14159265358979323846;

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

double blackman(double u) {
    // u in [-1, 1] across the kernel support.
    return 0.42 + 0.5 * std::cos(kPi * u) + 0.08 * std::cos(2.0 * kPi * u);
}

} // namespace

audio::Waveform resample(const audio::Waveform& w, int target_rate) {
    if (w.sample_rate <= 0 || target_rate <= 0)
        fail(ErrKind::invalid_arg, "resample needs positive rates (have %d -> %d)",
             w.sample_rate, target_rate);
    if (target_rate > w.sample_rate)
        fail(ErrKind::invalid_arg, "up-sampling %d -> %d is not supported", w.sample_rate,
             target_rate);
    if (target_rate == w.sample_rate) return w;

    const int g = std::gcd(w.sample_rate, target_rate);
    const int up = target_rate / g;   // L
    const int down = w.sample_rate / g; // M

    // Cutoff slightly below the target Nyquist, expressed relative to the
    // source Nyquist so the kernel lives on the source sample grid.
    const double fc = 0.97 * static_cast<double>(target_rate) / w.sample_rate;

    const int n_taps = 2 * kHalfTaps + 1;
    std::vector<double> taps(static_cast<std::size_t>(up) * n_taps);
    for (int phase = 0; phase < up; ++phase) {
        const double frac = static_cast<double>(phase) / up;
        double sum = 0.0;
        for (int k = -kHalfTaps; k <= kHalfTaps; ++k) {
            const double u = frac + k;
            const double h = fc * sinc(fc * u) * blackman(u / kHalfTaps);
            taps[static_cast<std::size_t>(phase) * n_taps + (k + kHalfTaps)] = h;
            sum += h;
        }
        // Unit DC gain per phase keeps constants exactly constant.
        for (int k = 0; k < n_taps; ++k)
            taps[static_cast<std::size_t>(phase) * n_taps + k] /= sum;
    }

    const std::size_t in_len = w.samples.size();
    const std::size_t out_len =
        (in_len * static_cast<std::size_t>(up) + down - 1) / static_cast<std::size_t>(down);

    audio::Waveform out;
    out.sample_rate = target_rate;
    out.samples.resize(out_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        const unsigned long long t = static_cast<unsigned long long>(n) * down;
        const long long base = static_cast<long long>(t / up);
        const int phase = static_cast<int>(t % up);
        const double* h = taps.data() + static_cast<std::size_t>(phase) * n_taps;
        double acc = 0.0;
        for (int k = -kHalfTaps; k <= kHalfTaps; ++k) {
            const long long idx = base - k;
            if (idx < 0 || idx >= static_cast<long long>(in_len)) continue;
            acc += h[k + kHalfTaps] * w.samples[static_cast<std::size_t>(idx)];
        }
        out.samples[n] = static_cast<float>(acc);
    }
    return out;
}

} // namespace nws::dsp
