#include "core/models/excitation.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"

#include <cmath>

namespace nws::models {

Excitation source_excitation(const std::vector<float>& f0_per_sample, int sample_rate,
                             uint64_t seed, double alpha, double sigma) {
    if (sample_rate <= 0) fail(ErrKind::invalid_arg, "excitation needs a positive sample rate");
    const double nyquist = sample_rate / 2.0;
    constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

    Rng rng(seed);
    Excitation ex;
    ex.harmonic.resize(f0_per_sample.size());
    ex.noise.resize(f0_per_sample.size());
    const double unvoiced_std = alpha / std::sqrt(2.0); // sine power alpha^2/2

    double phase = 0.0;
    for (std::size_t n = 0; n < f0_per_sample.size(); ++n) {
        const double f0 = f0_per_sample[n];
        if (f0 >= nyquist)
            fail(ErrKind::invalid_arg, "f0 %.1f Hz at sample %zu reaches Nyquist %.1f", f0, n,
                 nyquist);
        if (f0 < 0.0) fail(ErrKind::invalid_arg, "negative f0 at sample %zu", n);

        phase += kTwoPi * f0 / sample_rate;
        if (phase > kTwoPi) phase -= kTwoPi;

        const double eps1 = rng.gaussian();
        const double eps2 = rng.gaussian();
        ex.harmonic[n] =
            f0 > 0.0 ? alpha * std::sin(phase) + sigma * eps1 : unvoiced_std * eps1;
        ex.noise[n] = unvoiced_std * eps2;
    }
    return ex;
}

} // namespace nws::models
