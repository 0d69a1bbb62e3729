#pragma once

#include <cstdint>
#include <vector>

namespace nws::models {

struct Excitation {
    std::vector<double> harmonic; // sine where voiced, matched-power noise where not
    std::vector<double> noise;    // independent Gaussian branch
};

// Builds the two source signals from a per-sample F0 contour. The sine phase
// accumulates 2*pi*f0[n]/sample_rate every sample and runs straight through
// unvoiced stretches (f0 = 0 adds nothing), so voicing onsets stay phase
// continuous. Voiced samples are alpha*sin(phase) + sigma*eps; unvoiced ones
// are Gaussian with the sine's power (std alpha/sqrt(2)), as is the whole
// noise branch. One Gaussian per branch per sample keeps the stream aligned
// regardless of voicing. f0 at or above Nyquist is an error.
Excitation source_excitation(const std::vector<float>& f0_per_sample, int sample_rate,
                             uint64_t seed, double alpha = 0.1, double sigma = 0.003);

} // namespace nws::models
