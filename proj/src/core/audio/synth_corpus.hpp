#pragma once

#include "core/audio/manifest.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nws::audio {

struct SynthInstrument {
    std::string name;
    double f0_lo_hz = 0.0;
    double f0_hi_hz = 0.0;
};

struct SynthCorpusSpec {
    std::vector<SynthInstrument> instruments; // defaults to bass/alto/soprano ranges
    int tracks_per_instrument = 3;
    double seconds = 4.0;   // exact duration of every track
    int sample_rate = 48000;
    uint64_t seed = 7;
};

SynthCorpusSpec default_synth_spec();

// Generates harmonic-tone tracks with random note/rest sequences, exact 10 ms
// F0 labels from the note plan, and a manifest with per-track pieces. Within
// each instrument the last track is test, the one before it dev, the rest
// train. Same spec and seed give a byte-identical corpus.
Manifest make_synth_corpus(const SynthCorpusSpec& spec, const std::string& out_dir);

} // namespace nws::audio
