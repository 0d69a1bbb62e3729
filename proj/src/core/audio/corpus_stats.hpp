#pragma once

#include "core/audio/manifest.hpp"

#include <string>
#include <vector>

namespace nws::audio {

struct StatsRow {
    std::string instrument;
    Split split = Split::train;
    int count = 0;
    double duration_min = 0.0;
    bool has_f0 = false; // false when every frame of the combo is unvoiced
    float f0_max_hz = 0.0f;
    float f0_min_hz = 0.0f;
};

struct CorpusStats {
    std::vector<StatsRow> rows; // instruments sorted, splits in train/dev/test order
};

// Walks every manifest entry, reading audio for duration and labels for voiced
// F0 extrema. Instrument/split combos with no tracks produce no row.
CorpusStats corpus_stats(const Manifest& manifest);

// CSV with header instrument,split,count,duration_min,f0_max,f0_min.
// All-unvoiced combos leave the two f0 fields empty.
std::string stats_to_csv(const CorpusStats& stats);

} // namespace nws::audio
