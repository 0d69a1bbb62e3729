#include "core/models/sinc_filter.hpp"

namespace nws::models {

std::vector<double> sinc_lowpass_taps(double cutoff_hz, int sample_rate, int n_taps) {
    if (n_taps < 3 || n_taps % 2 == 0)
        fail(ErrKind::invalid_arg, "sinc filter needs an odd tap count >= 3, got %d", n_taps);
    if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
        fail(ErrKind::invalid_arg, "cutoff %g Hz outside (0, Nyquist %g)", cutoff_hz,
             sample_rate / 2.0);

    const std::vector<double> win = dsp::hamming_window(n_taps);
    const double a = 2.0 * cutoff_hz / sample_rate;
    const int c = (n_taps - 1) / 2;
    constexpr double kPi = 3.14159265358979323846;

    std::vector<double> h(n_taps);
    double sum = 0.0;
    for (int m = 0; m < n_taps; ++m) {
        const double u = m - c;
        h[m] = win[m] * (u == 0.0 ? a : std::sin(kPi * a * u) / (kPi * u));
        sum += h[m];
    }
    for (double& v : h) v /= sum;
    return h;
}

std::vector<double> sinc_highpass_taps(double cutoff_hz, int sample_rate, int n_taps) {
    std::vector<double> h = sinc_lowpass_taps(cutoff_hz, sample_rate, n_taps);
    const int c = (n_taps - 1) / 2;
    for (int m = 0; m < n_taps; ++m) h[m] = (m == c ? 1.0 : 0.0) - h[m];
    return h;
}

} // namespace nws::models
