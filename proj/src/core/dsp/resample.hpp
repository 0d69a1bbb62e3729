#pragma once

#include "core/audio/waveform.hpp"

namespace nws::dsp {

// Polyphase rational down-sampling by target/source reduced to lowest terms,
// with a windowed-sinc anti-aliasing low-pass at 0.97 of the target Nyquist.
// Equal rates pass the signal through; raising the rate is an error.
audio::Waveform resample(const audio::Waveform& w, int target_rate);

} // namespace nws::dsp
