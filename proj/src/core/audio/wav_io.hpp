#pragma once

#include "core/audio/waveform.hpp"

#include <string>

namespace nws::audio {

// Reads a RIFF WAV file: PCM 16/24-bit or IEEE float 32-bit, little-endian.
// Multi-channel files are reduced to channel 0 (with a warning). Samples are
// normalized to [-1, 1] by the format's full-scale value.
Waveform read_wav(const std::string& path);

// Writes PCM WAV at bit_depth 16 or 24. Samples are clipped to [-1, 1]
// before quantization.
void write_wav(const Waveform& w, const std::string& path, int bit_depth = 16);

} // namespace nws::audio
