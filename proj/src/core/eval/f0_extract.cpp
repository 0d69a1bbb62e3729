#include "core/eval/f0_extract.hpp"

#include "core/error.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nws::eval {

namespace {
constexpr double kWindowSeconds = 0.025;
constexpr double kHopSeconds = 0.010;
constexpr double kSearchLoHz = 40.0;
constexpr double kSearchHiHz = 2000.0;
constexpr double kEnergyFloor = 1e-8;
constexpr double kPeakSlack = 0.985; // accept the smallest lag within 1.5% of the best peak
} // namespace

F0Estimate extract_f0(const audio::Waveform& w, double voicing_threshold) {
    if (w.sample_rate < 8000)
        fail(ErrKind::invalid_arg, "pitch tracking needs >= 8 kHz, got %d Hz", w.sample_rate);

    const double sr = w.sample_rate;
    const long long win = std::llround(kWindowSeconds * sr);
    const long long hop = std::llround(kHopSeconds * sr);
    const long long tau_min = static_cast<long long>(std::ceil(sr / kSearchHiHz));
    const long long tau_max = static_cast<long long>(std::floor(sr / kSearchLoHz));
    const long long n = static_cast<long long>(w.size());
    const long long frames = n / hop;

    F0Estimate est;
    est.f0_hz.assign(static_cast<std::size_t>(std::max(frames, 0LL)), 0.0f);
    est.confidence.assign(est.f0_hz.size(), 0.0f);
    if (frames <= 0) return est;

    // Prefix energy makes every window energy O(1).
    std::vector<double> prefix_sq(static_cast<std::size_t>(n) + 1, 0.0);
    for (long long i = 0; i < n; ++i) {
        const double x = w.samples[static_cast<std::size_t>(i)];
        prefix_sq[static_cast<std::size_t>(i + 1)] = prefix_sq[static_cast<std::size_t>(i)] + x * x;
    }
    const auto energy = [&](long long start) {
        return prefix_sq[static_cast<std::size_t>(start + win)] -
               prefix_sq[static_cast<std::size_t>(start)];
    };

    std::vector<double> ncc(static_cast<std::size_t>(tau_max) + 1, 0.0);
    for (long long t = 0; t < frames; ++t) {
        const long long center = std::llround((t + 0.5) * hop);
        const long long a = center - win / 2;
        if (a < 0 || a + win + tau_max > n) continue; // stays unvoiced

        const double e0 = energy(a);
        for (long long tau = tau_min; tau <= tau_max; ++tau) {
            const double et = energy(a + tau);
            if (e0 < kEnergyFloor || et < kEnergyFloor) {
                ncc[static_cast<std::size_t>(tau)] = 0.0;
                continue;
            }
            double cross = 0.0;
            const float* x = w.samples.data() + a;
            const float* y = x + tau;
            for (long long i = 0; i < win; ++i)
                cross += static_cast<double>(x[i]) * static_cast<double>(y[i]);
            ncc[static_cast<std::size_t>(tau)] = cross / std::sqrt(e0 * et);
        }

        // Interior peaks only; a plateau's left edge counts.
        double best = 0.0;
        bool any = false;
        for (long long tau = tau_min + 1; tau < tau_max; ++tau) {
            const double v = ncc[static_cast<std::size_t>(tau)];
            if (v > ncc[static_cast<std::size_t>(tau - 1)] &&
                v >= ncc[static_cast<std::size_t>(tau + 1)]) {
                any = true;
                if (v > best) best = v;
            }
        }
        if (!any) continue;
        est.confidence[static_cast<std::size_t>(t)] = static_cast<float>(best);
        if (best < voicing_threshold) continue;

        long long pick = 0;
        for (long long tau = tau_min + 1; tau < tau_max; ++tau) {
            const double v = ncc[static_cast<std::size_t>(tau)];
            if (v > ncc[static_cast<std::size_t>(tau - 1)] &&
                v >= ncc[static_cast<std::size_t>(tau + 1)] && v >= kPeakSlack * best) {
                pick = tau;
                break;
            }
        }

        const double ym = ncc[static_cast<std::size_t>(pick - 1)];
        const double y0 = ncc[static_cast<std::size_t>(pick)];
        const double yp = ncc[static_cast<std::size_t>(pick + 1)];
        const double denom = ym - 2.0 * y0 + yp;
        double delta = denom == 0.0 ? 0.0 : 0.5 * (ym - yp) / denom;
        delta = std::max(-1.0, std::min(1.0, delta));
        est.f0_hz[static_cast<std::size_t>(t)] = static_cast<float>(sr / (pick + delta));
    }
    return est;
}

} // namespace nws::eval
